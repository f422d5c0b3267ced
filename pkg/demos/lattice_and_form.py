"""Act with root operators on phi, then look at the result through the lattice and the form.

A vector built from F's keeps Laurent coefficients but need not sit in the
crystal lattice; the modified operators do, and their reduction modulo q is a
single crystal vertex.
"""

from symcrystal.multiseg import theta_weight
from symcrystal.vtheta import (
    apply_fword,
    bilinear_form,
    gram_matrix,
    in_lattice,
    mod_root_F,
    phi,
    reduce_mod_q,
)


def main():
    v = apply_fword([-1, 1])
    print("F_{-1} F_1 phi =", v)
    print("  in lattice:", in_lattice(v))
    print("  (v, v) =", bilinear_form(v, v))

    w = phi()
    for k in (1, -1, 3):
        w = mod_root_F(k, w)
    print("\nmodified F_3 F_{-1} F_1 phi =", w)
    print("  in lattice:", in_lattice(w), " mod q:", reduce_mod_q(w))

    top = next(iter(reduce_mod_q(w)))
    basis, gram = gram_matrix(theta_weight(top))
    print(f"\nGram matrix on the block of {top}:")
    for m, row in zip(basis, gram):
        print(f"  {str(m):24s}", "  ".join(str(c) for c in row))


if __name__ == "__main__":
    main()
