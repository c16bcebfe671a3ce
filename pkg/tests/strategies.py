from hypothesis import strategies as st

from macwalk.rootsys import build_root_system

SMALL = [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2), ("A", 3)]
RS = {f"{t}{r}": build_root_system(t, r) for t, r in SMALL}

root_systems = st.sampled_from(sorted(RS)).map(RS.__getitem__)
rank2 = st.sampled_from(["A2", "B2", "G2"]).map(RS.__getitem__)


def weights(rs, lo=-3, hi=3):
    return st.tuples(*[st.integers(lo, hi)] * rs.rank)


def words(rs, max_len=8, affine=False):
    lo = 0 if affine else 1
    return st.lists(st.integers(lo, rs.rank), max_size=max_len)
