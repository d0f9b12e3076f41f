use serde::{Deserialize, Serialize};

use super::{gr_map, gr_subspace, FilteredMap, GradedError};
use crate::exactla::{kernel, Subspace};

/// Outcome of checking the three statements on `gr` of a filtered map
/// `Υ: A → B` and a subspace `C ⊆ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// `gr(ker Υ) ⊆ ker(gr Υ)`.
    pub ker_inclusion: bool,
    /// Whether `gr C ⊕ im gr Υ = gr B` holds for the given `C`.
    pub hypothesis: bool,
    /// `C + im Υ = B`; `None` when the hypothesis fails.
    pub surjectivity_transfer: Option<bool>,
    /// `gr Υ^{-1}(C) = ker(gr Υ)`; `None` when the hypothesis fails.
    pub preimage_identity: Option<bool>,
}

impl LemmaReport {
    /// All applicable statements hold.
    pub fn all(&self) -> bool {
        self.ker_inclusion && self.surjectivity_transfer.unwrap_or(true) && self.preimage_identity.unwrap_or(true)
    }
}

pub fn lemma_abc_check(f: &FilteredMap, c: &Subspace) -> Result<LemmaReport, GradedError> {
    let (na, nb) = (f.domain.ambient_dim(), f.codomain.ambient_dim());
    if c.ambient_dim() != nb {
        return Err(GradedError::DimensionMismatch { expected: nb, got: c.ambient_dim() });
    }
    let gr = gr_map(f)?;
    let ker_gr = kernel(&gr);
    let gr_ker = gr_subspace(&f.domain, &kernel(&f.matrix)).total(na);
    let ker_inclusion = gr_ker.is_subspace_of(&ker_gr);

    let gr_c = gr_subspace(&f.codomain, c).total(nb);
    let im_gr = Subspace::from_mat(&gr.transpose());
    let hypothesis = gr_c.dim() + im_gr.dim() == nb && gr_c.sum(&im_gr) == Subspace::full(nb);
    if !hypothesis {
        return Ok(LemmaReport { ker_inclusion, hypothesis, surjectivity_transfer: None, preimage_identity: None });
    }
    let im = Subspace::from_mat(&f.matrix.transpose());
    let surjectivity_transfer = c.sum(&im) == Subspace::full(nb);
    let ann = c.annihilator();
    let preimage = if ann.is_zero() {
        Subspace::full(na)
    } else {
        kernel(&(ann.basis() * &f.matrix))
    };
    let preimage_identity = gr_subspace(&f.domain, &preimage).total(na) == ker_gr;
    Ok(LemmaReport {
        ker_inclusion,
        hypothesis,
        surjectivity_transfer: Some(surjectivity_transfer),
        preimage_identity: Some(preimage_identity),
    })
}
