from hypothesis import strategies as st

from subneg.formula import TOP, And, Atom, Imp, Neg, Or

ATOMS = [Atom(n) for n in ("p", "q", "r")]


def formulas(max_leaves=8):
    return st.recursive(
        st.sampled_from(ATOMS + [TOP]),
        lambda sub: st.one_of(
            st.builds(Neg, sub),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Imp, sub, sub),
        ),
        max_leaves=max_leaves,
    )
