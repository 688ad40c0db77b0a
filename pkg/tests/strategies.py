import cmath

from hypothesis import strategies as st

from hexflip.sextuple import BraidWord


def disc_points(radius=0.6):
    return st.builds(lambda r, t: r * cmath.exp(1j * t),
                     st.floats(0.0, radius), st.floats(-3.2, 3.2))


def words(max_len=8):
    letter = st.tuples(st.integers(1, 6), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_len).map(lambda ls: BraidWord(tuple(ls)))


seeds = st.integers(0, 10**6)
