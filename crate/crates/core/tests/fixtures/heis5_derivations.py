"""Brute-force degree-zero derivations of heis(5), solved with sympy.

Basis order x1, x2, y1, y2, z with [x_a, y_a] = z. Unknowns: D(e_b) for the
four degree -1 vectors (16 entries, block b lists the coefficients of D(e_b))
followed by the coefficient of D(z) on z. Writes heis5_derivations.json.
"""
import json
import re
import sympy as sp

n = 4
omega = sp.zeros(n, n)
omega[0, 2] = omega[1, 3] = 1
omega[2, 0] = omega[3, 1] = -1

d = sp.symbols("d0:17")
D = sp.Matrix(n, n, lambda a, b: d[b * n + a])
dz = d[16]

eqs = []
for i in range(n):
    for j in range(i + 1, n):
        # D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j], compared on z.
        lhs = omega[i, j] * dz
        rhs = sum(D[k, i] * omega[k, j] for k in range(n)) + sum(D[k, j] * omega[i, k] for k in range(n))
        eqs.append(sp.expand(lhs - rhs))

A = sp.Matrix([[sp.diff(e, v) for v in d] for e in eqs])
null = A.nullspace()
fixture = {
    "algebra": {"heisenberg": 5},
    "unknowns": len(d),
    "equations": len(eqs),
    "rank": A.rank(),
    "nullity": len(null),
    "basis": [[str(x) for x in v] for v in null],
}
text = json.dumps(fixture, indent=1)
# One basis vector per line.
text = re.sub(r"\[\s+((?:\"[^\"]*\",?\s*)+)\]", lambda m: "[" + ", ".join(re.findall(r'"[^"]*"', m.group(1))) + "]", text)
with open("heis5_derivations.json", "w") as f:
    f.write(text + "\n")
