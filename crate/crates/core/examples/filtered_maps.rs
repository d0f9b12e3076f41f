//! Associated graded maps of a filtered map and the three statements about
//! kernels, complements and preimages.
//!
//! cargo run --example filtered_maps

use tanaka::exactla::{complement_in, Mat, Subspace};
use tanaka::graded::{gr_map, gr_subspace, lemma_abc_check, FilteredMap, FiltrationSpec};

fn main() {
    // A nilpotent shift on Q^3 with the complete flag; the filtration is
    // preserved, and gr of the map keeps only the weight-preserving part.
    let flag = FiltrationSpec::from_weights(&[2, 1, 0]);
    let shift = Mat::from_i64(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let f = FilteredMap::new(flag.clone(), flag.clone(), shift).unwrap();
    let g = gr_map(&f).unwrap();
    println!("gr of the map:\n{g:?}");

    // C: a graded complement of the image of gr f.
    let image = Subspace::from_mat(&g.transpose());
    let c = complement_in(&image, &Subspace::full(3)).unwrap();
    println!("gr C dims {:?}", gr_subspace(&flag, &c).dims());
    let report = lemma_abc_check(&f, &c).unwrap();
    println!("{report:?}");
}
