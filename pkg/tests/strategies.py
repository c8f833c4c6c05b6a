from hypothesis import strategies as st

from autfn.aut import DELTA, Gen, perm

RANK = 4


def letters(rank: int = RANK, max_size: int = 12):
    return st.lists(st.integers(1, rank).flatmap(lambda i: st.sampled_from((i, -i))), max_size=max_size)


def nielsen_gens(n: int = RANK):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return st.one_of(
        st.sampled_from([Gen("rho", p) for p in pairs]),
        st.sampled_from([Gen("lambda", p) for p in pairs]),
        st.sampled_from([Gen("e", (i,)) for i in range(1, n + 1)]),
        st.sampled_from([perm((i, j)) for i, j in pairs if i < j]),
        st.just(DELTA),
    )


def gen_words(n: int = RANK, max_size: int = 6):
    return st.lists(st.tuples(nielsen_gens(n), st.sampled_from((1, -1))), max_size=max_size)


def _quiet_from_maximal(tops):
    import warnings

    from autfn.simplicial import from_maximal

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return from_maximal(tops)


def complexes(max_vertex: int = 6, max_size: int = 3, max_tops: int = 6):
    return st.lists(
        st.lists(st.integers(0, max_vertex), min_size=1, max_size=max_size, unique=True),
        min_size=1, max_size=max_tops,
    ).map(_quiet_from_maximal)
