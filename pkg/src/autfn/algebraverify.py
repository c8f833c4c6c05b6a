"""Finite subgroups of Aut(F_n) and the relation suite.

Every relation is stored as data: two words in named generators, compared
either as automorphisms of the free group, as integer matrices after
abelianization, or modulo 2.
"""

from __future__ import annotations

import fnmatch
import itertools
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import aut
from .aut import DELTA, Endo, Gen, a_, b_, beta, compose, conjugate, eps, evaluate, inv, lam, perm, rho
from .aut import R as Rgen
from .linear import (
    CapExceeded,
    NotElementaryAbelian,
    abelianize,
    default_cap,
    mod_p,
    sign_quotient_rank,
)

GROUP_CAP = 10**6


# -- finite subgroups -------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAutGroup:
    rank: int
    elements: tuple[Endo, ...]
    generators: tuple[Endo, ...]
    _keys: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        if not self._keys:
            object.__setattr__(self, "_keys", frozenset(e.key() for e in self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, f: Endo) -> bool:
        return f.key() in self._keys

    def keyset(self) -> frozenset:
        return self._keys


def _sorted(els) -> tuple[Endo, ...]:
    return tuple(sorted(els, key=Endo.key))


def generate(gens: Sequence[Endo], cap: int | None = None) -> FiniteAutGroup:
    """Breadth-first closure under composition; raises ``CapExceeded`` for large or infinite groups."""
    cap = default_cap(GROUP_CAP) if cap is None else cap
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].rank
    for g in gens:
        if not g.invertible:
            raise aut.NotInvertible("generators must be invertible by construction")
    one = aut.identity(n, any(g.paired for g in gens))
    seen = {one.key(): one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            k = y.key()
            if k not in seen:
                seen[k] = y
                if len(seen) > cap:
                    raise CapExceeded(f"subgroup exceeds cap {cap}")
                queue.append(y)
    return FiniteAutGroup(n, _sorted(seen.values()), tuple(gens))


def _sign_perm(signs: Sequence[int], sigma: Sequence[int], n: int) -> Endo:
    """``alpha sigma`` with ``alpha = prod e_i^signs[i]`` and ``sigma`` a 1-based image table."""
    word = [(inv(i), 1) for i, s in enumerate(signs, 1) if s]
    cycles = _cycles(sigma)
    if cycles:
        word.append((perm(*cycles), 1))
    return evaluate(word, n)


def _cycles(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for start in range(1, len(sigma) + 1):
        if start in seen or sigma[start - 1] == start:
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            k = sigma[k - 1]
        out.append(tuple(cyc))
    return out


def _parity(sigma: Sequence[int]) -> int:
    return sum(len(c) - 1 for c in _cycles(sigma)) % 2


def build_wn(n: int) -> FiniteAutGroup:
    els = [
        _sign_perm(signs, sigma, n)
        for signs in itertools.product((0, 1), repeat=n)
        for sigma in itertools.permutations(range(1, n + 1))
    ]
    gens = [aut.named(inv(i), n) for i in range(1, n + 1)] + [
        aut.named(perm((i, i + 1)), n) for i in range(1, n)
    ]
    return FiniteAutGroup(n, _sorted(els), tuple(gens))


def build_swn(n: int) -> FiniteAutGroup:
    """Signed permutations of determinant +1; order ``2^(n-1) n!``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    els = [
        _sign_perm(signs, sigma, n)
        for signs in itertools.product((0, 1), repeat=n)
        for sigma in itertools.permutations(range(1, n + 1))
        if (sum(signs) + _parity(sigma)) % 2 == 0
    ]
    gens = [aut.named(eps(i, i + 1), n) for i in range(1, n)]
    gens += [aut.evaluate([(perm((i, i + 1)), 1), (inv(1), 1)], n) for i in range(1, n)]
    return FiniteAutGroup(n, _sorted(els), tuple(gens))


def build_sn(n: int) -> FiniteAutGroup:
    """Products of an even number of inversions; order ``2^(n-1)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    els = [
        _sign_perm(signs, range(1, n + 1), n)
        for signs in itertools.product((0, 1), repeat=n)
        if sum(signs) % 2 == 0
    ]
    gens = [aut.named(eps(i, i + 1), n) for i in range(1, n)]
    return FiniteAutGroup(n, _sorted(els), tuple(gens))


def build_t(m: int) -> FiniteAutGroup:
    """``T = <R_1, ..., R_m>`` inside Aut(F_2m)."""
    return generate([aut.named(Rgen(i), 2 * m) for i in range(1, m + 1)])


def is_elementary_abelian(G: FiniteAutGroup, p: int) -> int | NotElementaryAbelian:
    gens = list(G.generators) or list(G.elements)
    for a in gens:
        if not aut.power(a, p).is_identity():
            return NotElementaryAbelian("a generator does not have order dividing p")
        for b in gens:
            if compose(a, b) != compose(b, a):
                return NotElementaryAbelian("not abelian")
    r, size = 0, 1
    while size < G.order:
        size *= p
        r += 1
    if size != G.order:
        return NotElementaryAbelian("order is not a power of p")
    return r


def find_conjugator(x: Endo, y: Endo, pool) -> Endo | None:
    """Some ``c`` in ``pool`` with ``x^c == y``."""
    if x.rank != y.rank:
        raise aut.RankError("rank mismatch")
    for c in pool:
        if conjugate(x, c) == y:
            return c
    return None


# -- relation checks ------------------------------------------------------------------


@dataclass(frozen=True)
class RelationCheck:
    """``lhs == rhs`` at rank ``n``.

    ``mode`` is ``aut`` (equality in Aut(F_n)), ``gl`` (equality of the
    abelianized integer matrices), ``mod2`` (equality mod 2) or
    ``psl_rank`` (the words in ``gens`` generate an elementary abelian
    2-group modulo +-I of rank ``expect_rank``).  With ``expect_equal``
    false the check passes when the two sides differ.
    """

    id: str
    n: int
    lhs: tuple = ()
    rhs: tuple = ()
    mode: str = "aut"
    paper_ref: str = ""
    quote: str = ""
    expect_equal: bool = True
    gens: tuple = ()
    expect_rank: int = 0


@dataclass
class CheckResult:
    id: str
    paper_ref: str
    quote: str
    status: str
    witness: str | None = None
    millis: float = 0.0


@dataclass
class CheckReport:
    suite: str
    results: list[CheckResult]
    millis: float = 0.0

    @property
    def passed(self) -> int:
        return sum(r.status == "pass" for r in self.results)

    @property
    def failed(self) -> int:
        return sum(r.status == "fail" for r in self.results)

    @property
    def skipped(self) -> int:
        return sum(r.status == "skip" for r in self.results)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> dict:
        return {"passed": self.passed, "failed": self.failed, "skipped": self.skipped}

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "results": [asdict(r) for r in self.results],
            "summary": self.summary(),
            "millis": self.millis,
        }


def _w(*items) -> tuple:
    """Build a generator word; bare ``Gen`` means exponent 1."""
    return tuple(x if isinstance(x, tuple) else (x, 1) for x in items)


def _inv_word(word) -> tuple:
    return tuple((g, -e) for g, e in reversed(word))


def _conj(x, c) -> tuple:
    """``x^c = c^-1 x c`` as a word."""
    return _inv_word(c) + tuple(x) + tuple(c)


def _comm(x, y) -> tuple:
    return tuple(x) + tuple(y) + _inv_word(x) + _inv_word(y)


def _fmt(word) -> str:
    if not word:
        return "1"
    return " ".join(str(g) + ("" if e == 1 else f"^{e}") for g, e in word)


def _differs(f: Endo, g: Endo, paired: bool) -> str:
    from .freegroup import format_word

    for k, (x, y) in enumerate(zip(f.images, g.images), 1):
        if x != y:
            name = format_word(aut.Word(f.rank, (k,)), paired)
            return f"{name}: lhs -> {format_word(x, paired)}, rhs -> {format_word(y, paired)}"
    return ""


def evaluate_check(chk: RelationCheck) -> CheckResult:
    t0 = time.perf_counter()
    witness = None
    if chk.mode == "psl_rank":
        mats = [abelianize(evaluate(w, chk.n)) for w in chk.gens]
        r = sign_quotient_rank(mats)
        ok = r == chk.expect_rank
        if not ok:
            witness = f"rank {r!r}, expected {chk.expect_rank}"
    else:
        f, g = evaluate(chk.lhs, chk.n), evaluate(chk.rhs, chk.n)
        if chk.mode == "aut":
            same = f == g
            if not same:
                paired = any(x.kind in ("R", "beta") for x, _ in chk.lhs + chk.rhs)
                witness = _differs(f, g, paired)
        elif chk.mode == "gl":
            a, b = abelianize(f), abelianize(g)
            same = a == b
            if not same:
                witness = f"lhs matrix {a}; rhs matrix {b}"
        elif chk.mode == "mod2":
            a, b = mod_p(abelianize(f), 2), mod_p(abelianize(g), 2)
            same = a == b
            if not same:
                witness = f"lhs mod 2 {a}; rhs mod 2 {b}"
        else:
            raise ValueError(f"unknown mode {chk.mode!r}")
        ok = same == chk.expect_equal
        if not ok and not chk.expect_equal:
            witness = "both sides agree"
    millis = (time.perf_counter() - t0) * 1000
    return CheckResult(chk.id, chk.paper_ref, chk.quote, "pass" if ok else "fail", witness, round(millis, 3))


# ledger anchors: (paper_ref, formula)
ANCHORS = {
    "conj_table": (
        "conjugation of lambda_ij by inversions",
        r"\lambda_{ij}^{\alpha}=\lambda_{ij},\ \rho_{ij},\ \lambda_{ij}^{-1},\ \rho_{ij}^{-1}"
        r" for (\epsilon_i,\epsilon_j)=(0,0),(1,1),(0,1),(1,0)",
    ),
    "relabel": ("relabelling by permutations", r"\theta_{ij}^{\sigma} = \theta_{\sigma(i)\sigma(j)}"),
    "nielsen_commutator": ("Nielsen commutator formula", r"[\lambda_{ij},\lambda_{jk}]=\lambda_{ik}"),
    "delta_conj": ("central element swaps left and right Nielsen maps", r"\Delta \lambda_{ij} \Delta = \rho_{ij}"),
    "eps_product": (
        "product of involutions",
        r"\varepsilon_{12}\varepsilon_{45}\varepsilon_{23}\varepsilon_{45}=\varepsilon_{13}",
    ),
    "r_lemma.1": ("order-3 generators, relation 1", r"R_ie_{a_i}e_{b_i}R_i^{-1}=\beta_i"),
    "r_lemma.2": ("order-3 generators, relation 2", r"[R_j,e_{a_i}]=[R_j,e_{b_i}]=1,\ j\neq i"),
    "r_lemma.3": ("order-3 generators, relation 3", r"R_ie_{b_i} R_i^{-1}e_{a_i}=\lambda_{b_ia_i}^2"),
    "r_lemma.4": ("order-3 generators, relation 4", r"R_i^{-1}e_{a_i} R_ie_{b_i}=\lambda_{a_ib_i}^2"),
    "saut_relation": (
        "relation inside SAut",
        r"R_i^{-1}e_{a_i}e_{a_j} R_ie_{b_i}e_{a_j}=\lambda_{a_ib_i}^2",
    ),
    "t_relation.RiRj": (
        "t = R_i R_j",
        r"t^{-1}e_{a_i}e_{a_j}te_{b_i}e_{b_j}= \lambda_{a_ib_i}^2 \lambda_{a_jb_j}^2",
    ),
    "t_relation.RiRjinv": (
        "t = R_i R_j^{-1}, from relation 3 for i and relation 4 for j",
        r"te_{b_i}e_{a_j}t^{-1}e_{a_i}e_{b_j}= \lambda_{b_ia_i}^2 \lambda_{a_jb_j}^2",
    ),
    "t_relation.RiRjinv_swapped": (
        "t = R_i R_j^{-1}, right side with the squares swapped (expected to differ)",
        r"te_{b_i}e_{a_j}t^{-1}e_{a_i}e_{b_j}\neq \lambda_{a_ib_i}^2 \lambda_{b_ja_j}^2",
    ),
    "pair_conj.rho": ("e_{a_i}e_{b_i} conjugates", r"\lambda_{a_ib_i}^{e_{a_i}e_{b_i}}=\rho_{a_ib_i}"),
    "pair_conj.beta": ("beta_i commutes", r"[\beta_i,\lambda_{a_ib_i}]=1"),
    "combined_rule": ("conjugation by SW_n", r"\lambda_{ij}^{\alpha\sigma} = \theta_{\sigma(i)\sigma(j)}^{\pm 1}"),
    "sn_mod2": ("image of SN mod 2", r"SN \to SL(n,\mathbb Z_2)\ \text{trivial}"),
    "psl4_klein": (
        "(Z_2)^4 in PSL(4,Z)",
        r"\langle e_1e_2,\ e_2e_3,\ (12)(34),\ (13)(24)\rangle \cong (\mathbb Z_2)^4",
    ),
    "sl4.1": ("relations in SL(4,Z)", r"[\overline\lambda_{a_ib_i}^2,\overline\lambda_{b_ib_j}]=\overline\lambda_{a_ib_j}^2"),
    "sl4.2": ("relations in SL(4,Z)", r"[\overline\lambda_{a_jb_j}^2,\overline\lambda_{b_ib_j}]=1"),
}


def _mk(cid: str, anchor: str, **kw) -> RelationCheck:
    ref, quote = ANCHORS[anchor]
    return RelationCheck(id=cid, paper_ref=ref, quote=quote, **kw)


def _conj_table_expected(i, j, ei, ej) -> tuple:
    if (ei, ej) == (0, 0):
        return _w(lam(i, j))
    if (ei, ej) == (1, 1):
        return _w(rho(i, j))
    if (ei, ej) == (0, 1):
        return _w((lam(i, j), -1))
    return _w((rho(i, j), -1))


def _alpha_word(signs) -> tuple:
    return _w(*[inv(k) for k, s in enumerate(signs, 1) if s])


def build_checks(max_n: int = 5, max_m: int = 3) -> list[RelationCheck]:
    """Every instantiated relation for ranks up to ``max_n`` and ``T(m)``, ``m <= max_m``."""
    checks: list[RelationCheck] = []
    add = checks.append

    # (a) conjugation table, over every alpha in N
    for n in range(2, max_n + 1):
        for i, j in itertools.permutations(range(1, n + 1), 2):
            for signs in itertools.product((0, 1), repeat=n):
                s = "".join(map(str, signs))
                add(_mk(f"a.conj_table.n{n}.i{i}j{j}.alpha{s}", "conj_table", n=n,
                        lhs=_conj(_w(lam(i, j)), _alpha_word(signs)),
                        rhs=_conj_table_expected(i, j, signs[i - 1], signs[j - 1])))

    # (b) relabelling by every permutation of S_4
    n = min(4, max_n)
    for sigma in itertools.permutations(range(1, n + 1)):
        cyc = _cycles(sigma)
        sw = _w(perm(*cyc)) if cyc else ()
        tag = "".join(map(str, sigma))
        for i, j in itertools.permutations(range(1, n + 1), 2):
            for name, th in (("lambda", lam), ("rho", rho)):
                add(_mk(f"b.relabel.n{n}.s{tag}.{name}{i}{j}", "relabel", n=n,
                        lhs=_conj(_w(th(i, j)), sw), rhs=_w(th(sigma[i - 1], sigma[j - 1]))))

    # (c) [lambda_ij, lambda_jk] = lambda_ik
    for n in range(3, max_n + 1):
        for i, j, k in itertools.permutations(range(1, n + 1), 3):
            add(_mk(f"c.nielsen_commutator.n{n}.i{i}j{j}k{k}", "nielsen_commutator", n=n,
                    lhs=_comm(_w(lam(i, j)), _w(lam(j, k))), rhs=_w(lam(i, k))))

    # (d) Delta lambda_ij Delta = rho_ij
    for n in range(2, max_n + 1):
        for i, j in itertools.permutations(range(1, n + 1), 2):
            add(_mk(f"d.delta_conj.n{n}.i{i}j{j}", "delta_conj", n=n,
                    lhs=_w(DELTA, lam(i, j), DELTA), rhs=_w(rho(i, j))))

    # (e)
    if max_n >= 5:
        add(_mk("e.eps_product.n5", "eps_product", n=5,
                lhs=_w(eps(1, 2), eps(4, 5), eps(2, 3), eps(4, 5)), rhs=_w(eps(1, 3))))

    # (f)-(m): the order-3 generators, n = 2m
    for m in range(1, max_m + 1):
        n = 2 * m
        for i in range(1, m + 1):
            ai, bi = a_(i), b_(i)
            add(_mk(f"f.r_lemma.1.m{m}.i{i}", "r_lemma.1", n=n,
                    lhs=_w(Rgen(i), inv(ai), inv(bi), (Rgen(i), -1)), rhs=_w(beta(i))))
            add(_mk(f"h.r_lemma.3.m{m}.i{i}", "r_lemma.3", n=n,
                    lhs=_w(Rgen(i), inv(bi), (Rgen(i), -1), inv(ai)), rhs=_w((lam(bi, ai), 2))))
            add(_mk(f"i.r_lemma.4.m{m}.i{i}", "r_lemma.4", n=n,
                    lhs=_w((Rgen(i), -1), inv(ai), Rgen(i), inv(bi)), rhs=_w((lam(ai, bi), 2))))
            add(_mk(f"m.pair_conj.rho.m{m}.i{i}", "pair_conj.rho", n=n,
                    lhs=_conj(_w(lam(ai, bi)), _w(inv(ai), inv(bi))), rhs=_w(rho(ai, bi))))
            add(_mk(f"m.pair_conj.beta.m{m}.i{i}", "pair_conj.beta", n=n,
                    lhs=_comm(_w(beta(i)), _w(lam(ai, bi))), rhs=()))
            for j in range(1, m + 1):
                if j == i:
                    continue
                aj, bj = a_(j), b_(j)
                for x, e in (("a", inv(ai)), ("b", inv(bi))):
                    add(_mk(f"g.r_lemma.2.m{m}.j{j}.e{x}{i}", "r_lemma.2", n=n,
                            lhs=_comm(_w(Rgen(j)), _w(e)), rhs=()))
                add(_mk(f"j.saut_relation.m{m}.i{i}j{j}", "saut_relation", n=n,
                        lhs=_w((Rgen(i), -1), inv(ai), inv(aj), Rgen(i), inv(bi), inv(aj)),
                        rhs=_w((lam(ai, bi), 2))))
                t = _w(Rgen(i), Rgen(j))
                add(_mk(f"k.t_relation.RiRj.m{m}.i{i}j{j}", "t_relation.RiRj", n=n,
                        lhs=_inv_word(t) + _w(inv(ai), inv(aj)) + t + _w(inv(bi), inv(bj)),
                        rhs=_w((lam(ai, bi), 2), (lam(aj, bj), 2))))
                t = _w(Rgen(i), (Rgen(j), -1))
                lhs = t + _w(inv(bi), inv(aj)) + _inv_word(t) + _w(inv(ai), inv(bj))
                add(_mk(f"l.t_relation.RiRjinv.m{m}.i{i}j{j}", "t_relation.RiRjinv", n=n,
                        lhs=lhs, rhs=_w((lam(bi, ai), 2), (lam(aj, bj), 2))))
                add(_mk(f"l.t_relation.RiRjinv_swapped.m{m}.i{i}j{j}", "t_relation.RiRjinv_swapped",
                        n=n, lhs=lhs, rhs=_w((lam(ai, bi), 2), (lam(bj, aj), 2)), expect_equal=False))

    # (n) combined rule over all of SW_n
    for n in (3, 4):
        if n > max_n:
            continue
        for signs in itertools.product((0, 1), repeat=n):
            for sigma in itertools.permutations(range(1, n + 1)):
                if (sum(signs) + _parity(sigma)) % 2:
                    continue
                cyc = _cycles(sigma)
                c = _alpha_word(signs) + (_w(perm(*cyc)) if cyc else ())
                tag = "".join(map(str, signs)) + "." + "".join(map(str, sigma))
                for i, j in itertools.permutations(range(1, n + 1), 2):
                    (g, e), = _conj_table_expected(i, j, signs[i - 1], signs[j - 1])
                    rhs = _w((Gen(g.kind, (sigma[i - 1], sigma[j - 1])), e))
                    add(_mk(f"n.combined_rule.n{n}.{tag}.i{i}j{j}", "combined_rule", n=n,
                            lhs=_conj(_w(lam(i, j)), c), rhs=rhs))

    # (o) SN dies mod 2
    for n in range(2, max_n + 1):
        for signs in itertools.product((0, 1), repeat=n):
            if sum(signs) % 2:
                continue
            s = "".join(map(str, signs))
            add(_mk(f"o.sn_mod2.n{n}.alpha{s}", "sn_mod2", n=n, lhs=_alpha_word(signs), rhs=(), mode="mod2"))

    # (p) (Z_2)^4 modulo +-I at n = 4
    if max_n >= 4:
        add(_mk("p.psl4_klein.n4", "psl4_klein", n=4, mode="psl_rank", expect_rank=4,
                gens=(_w(inv(1), inv(2)), _w(inv(2), inv(3)), _w(perm((1, 2), (3, 4))), _w(perm((1, 3), (2, 4))))))

    # (q) SL(4, Z) identities on the sub-basis a_i, b_i, a_j, b_j
    for m in range(2, max_m + 1):
        n = 2 * m
        for i, j in itertools.permutations(range(1, m + 1), 2):
            ai, bi, aj, bj = a_(i), b_(i), a_(j), b_(j)
            add(_mk(f"q.sl4.1.m{m}.i{i}j{j}", "sl4.1", n=n, mode="gl",
                    lhs=_comm(_w((lam(ai, bi), 2)), _w(lam(bi, bj))), rhs=_w((lam(ai, bj), 2))))
            add(_mk(f"q.sl4.2.m{m}.i{i}j{j}", "sl4.2", n=n, mode="gl",
                    lhs=_comm(_w((lam(aj, bj), 2)), _w(lam(bi, bj))), rhs=()))

    checks.sort(key=lambda c: c.id)
    return checks


def select(checks: Sequence[RelationCheck], patterns: Sequence[str] | None) -> list[RelationCheck]:
    """Keep checks whose id matches any glob; a pattern also matches with the
    ledger letter prefix stripped, so ``r_lemma.*`` selects ``f.r_lemma.1...``."""
    if not patterns:
        return list(checks)
    out = []
    for c in checks:
        bare = c.id.split(".", 1)[1]
        if any(fnmatch.fnmatchcase(c.id, p) or fnmatch.fnmatchcase(bare, p) for p in patterns):
            out.append(c)
    return out


def _run_chunk(chunk: Sequence[RelationCheck]) -> list[CheckResult]:
    return [evaluate_check(c) for c in chunk]


def run_relation_suite(max_n: int = 5, max_m: int = 3, patterns: Sequence[str] | None = None,
                       jobs: int = 1, checks: Sequence[RelationCheck] | None = None) -> CheckReport:
    t0 = time.perf_counter()
    if checks is None:
        checks = select(build_checks(max_n, max_m), patterns)
        if patterns and not checks:
            raise KeyError(f"no check matches {list(patterns)}")
    checks = list(checks)
    if jobs > 1 and len(checks) > 1:
        size = max(1, len(checks) // (4 * jobs))
        chunks = [checks[k:k + size] for k in range(0, len(checks), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]
    else:
        results = _run_chunk(checks)
    results.sort(key=lambda r: r.id)
    return CheckReport("relations", results, round((time.perf_counter() - t0) * 1000, 3))


def describe(chk: RelationCheck) -> str:
    if chk.mode == "psl_rank":
        return "rank<" + ", ".join(_fmt(w) for w in chk.gens) + f"> = {chk.expect_rank}"
    op = "==" if chk.expect_equal else "!="
    return f"{_fmt(chk.lhs)} {op} {_fmt(chk.rhs)}"
