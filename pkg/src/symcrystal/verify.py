"""Verification suites run by ``symcrystal verify`` and by the acceptance tests.

Every suite takes the enumeration bounds and a seed, checks one family of
invariants exhaustively over the enumerated basis (plus seeded random samples
where the statement is about arbitrary vectors) and returns a
:class:`SuiteResult` holding counts and the first witnesses of any failures.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from . import crystal, estimates, globalbasis, identities, twisted, vtheta
from .multiseg import (
    EMPTY,
    Multisegment,
    Weight,
    cartan,
    cry_cmp_multi,
    enumerate_theta_restricted,
    pairing,
    theta_weight,
    theta_weight_block,
)
from .qarith import ONE, ZERO, Scalar, qfact, qpow
from .uqminus import UqElement, bar_uq, multiply, pbw, straighten_word
from .vtheta import (
    ThetaVector,
    apply_divided_F,
    apply_E,
    apply_F,
    apply_T,
    bar_vtheta,
    bilinear_form,
    in_lattice,
    mod_root_E,
    mod_root_F,
    phi,
    realize_basis_vector,
    reduce_mod_q,
    string_decompose,
    string_decompose_recursive,
    unit,
)

MAX_WITNESSES = 20


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failed: int = 0
    witnesses: List[Dict[str, str]] = field(default_factory=list)
    counts: Dict[str, int] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.checked > 0

    def record(self, invariant: str, ok: bool, witness: Callable[[], str] | str = "") -> None:
        self.checked += 1
        self.counts[invariant] = self.counts.get(invariant, 0) + 1
        if not ok:
            self.failed += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append({"invariant": invariant, "witness": witness() if callable(witness) else witness})

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checked": self.checked,
            "failed": self.failed,
            "counts": self.counts,
            "witnesses": self.witnesses,
            "seconds": round(self.seconds, 3),
        }


def indices(index_bound: int) -> List[int]:
    """Operator indices ``1, -1, 3, -3, ...`` reaching one step past the bound."""
    out = []
    for a in range(1, index_bound + 3, 2):
        out += [a, -a]
    return out


def _basis(content_bound: int, index_bound: int) -> List[Multisegment]:
    return enumerate_theta_restricted(content_bound, index_bound)


def _weights(ms: Sequence[Multisegment]) -> List[Weight]:
    return sorted({theta_weight(m) for m in ms}, key=lambda w: w.items)


def _random_laurent(rng: random.Random, span: int = 2) -> Scalar:
    while True:
        s = Scalar.laurent({rng.randint(-span, span): rng.randint(-2, 2) for _ in range(rng.randint(1, 3))})
        if s:
            return s


def _random_a0(rng: random.Random) -> Scalar:
    """A random element of A0 (regular at q = 0)."""
    num = Scalar.laurent({e: rng.randint(-2, 2) for e in range(rng.randint(1, 3))})
    den = Scalar.laurent({0: 1, rng.randint(1, 2): rng.choice([-1, 1])})
    return num / den


def _random_vector(rng: random.Random, block: Sequence[Multisegment], coef=_random_laurent) -> ThetaVector:
    picks = rng.sample(list(block), k=min(len(block), rng.randint(1, 3)))
    return ThetaVector({m: coef(rng) for m in picks})


# 1: straightening -----------------------------------------------------------------


def suite_straighten(content_bound: int, index_bound: int, seed: int = 0, letter_cap: int = 10) -> SuiteResult:
    res = SuiteResult("straighten")
    for c in identities.uq_cases():
        res.record(c.name, c.holds, lambda c=c: f"{c.name}{c.params}: lhs={c.lhs} rhs={c.rhs}")
        if c.factors and identities.letter_cost(c.factors) <= letter_cap:
            res.record(c.name + "/letters", identities.letter_route(c.factors) == c.lhs, f"{c.name}{c.params}")
    rng = random.Random(seed)
    segs = [(i, j) for i in range(-index_bound, index_bound + 1, 2) for j in range(i, index_bound + 1, 2)]
    for _ in range(60):
        word = [(rng.choice(segs), rng.randint(1, 2)) for _ in range(rng.randint(2, 3))]
        ref = straighten_word(word)
        res.record("confluence", straighten_word(word, rng=random.Random(rng.random())) == ref, str(word))
        prod = pbw(EMPTY)
        for s, a in word:
            prod = multiply(prod, pbw(Multisegment({s: a})))
        res.record("insertion-vs-rewriting", prod == ref, str(word))
    for _ in range(30):
        x, y, z = (pbw(Multisegment({rng.choice(segs): 1})) for _ in range(3))
        res.record("associativity", multiply(x, multiply(y, z)) == multiply(multiply(x, y), z), f"{x} {y} {z}")
    return res


# 2: closed action formulas against the algebra presentation ---------------------------


def suite_realize(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("realize")
    for m in _basis(content_bound, index_bound):
        r = realize_basis_vector(m)
        res.record("realize", r == unit(m), lambda m=m, r=r: f"{m}: {r}")
    return res


def suite_oracle(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    """Closed formulas versus the model of V_theta(0) inside U_q^-."""
    res = SuiteResult("oracle")
    ks = indices(index_bound)
    for m in _basis(content_bound, index_bound):
        v, x = unit(m), twisted.image(m)
        for k in ks:
            res.record("F", twisted.image_of(apply_F(k, v)) == twisted.twisted_F(k, x), f"k={k} m={m}")
            res.record("E", twisted.image_of(apply_E(k, v)) == twisted.twisted_E(k, x), f"k={k} m={m}")
            res.record("T", twisted.image_of(apply_T(k, v)) == twisted.twisted_T(k, x), f"k={k} m={m}")
    for m in _basis(content_bound, index_bound):
        a = pbw(m)
        v = twisted.to_vtheta(a)
        for k in ks:
            res.record("E-by-derivations", twisted.to_vtheta(twisted.E_via_derivations(k, a)) == apply_E(k, v), f"k={k} m={m}")
    for c in identities.phi_relations():
        res.record(c.name, c.holds, lambda c=c: f"{c.name}{c.params}: lhs={c.lhs} rhs={c.rhs}")
    for j in range(1, index_bound + 1, 2):
        for i in range(1, j + 1, 2):
            lhs = _segment_on_phi(-j, -i)
            res.record("reflect-segment", lhs == _segment_on_phi(i, j), f"<{-j},{-i}> vs <{i},{j}>")
            if i < j:
                res.record("reflect-half", _segment_on_phi(-j, i) == _segment_on_phi(-i, j).scale(qpow(-1)), f"<{-j},{i}>")
    return res


def _segment_on_phi(lo: int, hi: int) -> ThetaVector:
    from .uqminus import apply_words, expand_segment

    return apply_words(expand_segment((lo, hi)), apply_F, phi())


# 3: algebra relations -------------------------------------------------------------


def suite_qboson(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("qboson")
    ks = indices(index_bound)
    for m in _basis(content_bound, index_bound):
        v = unit(m)
        for i in ks:
            Tv = apply_T(i, v)
            res.record("T-reflect", Tv == apply_T(-i, v), f"i={i} m={m}")
            for j in ks:
                res.record("T-commute", apply_T(i, apply_T(j, v)) == apply_T(j, Tv), f"i={i} j={j} m={m}")
                e = cartan(i, j) + cartan(-i, j)
                Fv, Ev = apply_F(j, v), apply_E(j, v)
                res.record("T-conj-F", apply_T(i, Fv) == apply_F(j, Tv).scale(qpow(-e)), f"i={i} j={j} m={m}")
                if Ev:
                    res.record("T-conj-E", apply_T(i, Ev) == apply_E(j, Tv).scale(qpow(e)), f"i={i} j={j} m={m}")
                lhs = apply_E(i, Fv) - apply_F(j, apply_E(i, v)).scale(qpow(-cartan(i, j)))
                rhs = vtheta.zero()
                if i == j:
                    rhs = rhs + v
                if i == -j:
                    rhs = rhs + Tv
                res.record("E-F-exchange", lhs == rhs, f"i={i} j={j} m={m}")
    return res


def _serre(op, i: int, j: int, v: ThetaVector) -> ThetaVector:
    b = 1 - cartan(i, j)
    total = vtheta.zero()
    for n in range(b + 1):
        w = v
        for _ in range(b - n):
            w = op(i, w)
        w = op(j, w)
        for _ in range(n):
            w = op(i, w)
        scale = (qfact(n) * qfact(b - n)).inverse()
        total = total + w.scale(scale if n % 2 == 0 else -scale)
    return total


def suite_serre(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("serre")
    ks = indices(index_bound)
    for m in _basis(content_bound, index_bound):
        v = unit(m)
        for i in ks:
            for j in ks:
                if i == j:
                    continue
                res.record("serre-F", not _serre(apply_F, i, j, v), f"i={i} j={j} m={m}")
                res.record("serre-E", not _serre(apply_E, i, j, v), f"i={i} j={j} m={m}")
    return res


# 4: crystal basis ------------------------------------------------------------------


def _congruent(v: ThetaVector, target: Optional[Multisegment]) -> bool:
    if not in_lattice(v):
        return False
    return reduce_mod_q(v) == ({} if target is None else {target: 1})


def suite_crystal_congruence(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("crystal-congruence")
    ms = _basis(content_bound, index_bound)
    ks = indices(index_bound)
    for m in ms:
        v = unit(m)
        for k in ks:
            f = mod_root_F(k, v)
            res.record("F-lattice", in_lattice(f), f"k={k} m={m}")
            res.record("F-congruence", _congruent(f, crystal.theta_F(k, m)), lambda: f"k={k} m={m}: {f}")
            eps = crystal.theta_epsilon(k, m)
            w, target = v, m
            for n in range(1, eps + 2):
                w = mod_root_E(k, w)
                target = crystal.theta_E(k, target) if target is not None else None
                res.record("E-lattice", in_lattice(w), f"k={k} m={m} n={n}")
                res.record("E-congruence", _congruent(w, target), lambda: f"k={k} m={m} n={n}: {w}")
            res.record("E-beyond-epsilon", target is None, f"k={k} m={m}")
            res.record("decomposition-routes", string_decompose(k, v) == string_decompose_recursive(k, v), f"k={k} m={m}")
    rng = random.Random(seed)
    blocks = {}
    for m in ms:
        blocks.setdefault(theta_weight(m), []).append(m)
    for _ in range(100):
        block = blocks[rng.choice(sorted(blocks, key=lambda w: w.items))]
        v = _random_vector(rng, block, _random_a0)
        k = rng.choice(ks)
        res.record("random-lattice-F", in_lattice(mod_root_F(k, v)), f"k={k} v={v}")
        res.record("random-lattice-E", in_lattice(mod_root_E(k, v)), f"k={k} v={v}")
    for mu, block in blocks.items():
        res.record("dimension", len(theta_weight_block(mu)) == len(block), f"{mu}")
        res.record("word-span-rank", _word_span_rank(mu) == len(block), f"{mu}")
    return res


def _word_span_rank(mu: Weight) -> int:
    """Rank of the span of all ``F_{i_1} ... F_{i_r} phi`` of theta-weight ``mu``."""
    from . import linalg

    vecs = [phi()]
    letters = sorted({abs(k) for k, _ in mu.items})
    depth = sum(-c for _, c in mu.items) // 2
    for _ in range(depth):
        nxt = []
        for v in vecs:
            for a in letters:
                for k in (a, -a):
                    w = apply_F(k, v)
                    if w and _below(theta_weight(next(iter(w.keys()))), mu):
                        nxt.append(w)
        vecs = _independent(nxt)
    vecs = [v for v in vecs if theta_weight(next(iter(v.keys()))) == mu]
    block = theta_weight_block(mu)
    rows = [[v.coeff(m) for m in block] for v in vecs]
    return len(linalg.rref(rows)[1]) if rows else 0


def _below(nu: Weight, mu: Weight) -> bool:
    """``nu - mu`` has nonnegative coefficients (``nu`` can still reach ``mu``)."""
    return all(c >= 0 for _, c in (nu - mu).items)


def _independent(vecs: List[ThetaVector]) -> List[ThetaVector]:
    """A maximal linearly independent subfamily, per theta-weight."""
    from . import linalg

    groups: Dict[Weight, List[ThetaVector]] = {}
    for v in vecs:
        groups.setdefault(theta_weight(next(iter(v.keys()))), []).append(v)
    out = []
    for mu, vs in groups.items():
        block = theta_weight_block(mu)
        cols = [[v.coeff(m) for v in vs] for m in block]
        _, piv = linalg.rref(cols)
        out += [vs[p] for p in piv]
    return out


# 5: coefficient estimates -----------------------------------------------------------


def suite_bounds(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("bounds")
    for m in _basis(content_bound, index_bound):
        for k in indices(index_bound):
            vs = estimates.violations(k, m)
            res.record("negative-index" if k < 0 else "positive-index", not vs,
                       lambda vs=vs: "; ".join(f"{v.rule} k={v.k} m={v.m} -> {v.target}: {v.detail}" for v in vs))
    return res


# 6: bar involution -------------------------------------------------------------------


def _all_multisegments(boxes: int, index_bound: int) -> List[Multisegment]:
    segs = [(i, j) for i in range(-index_bound, index_bound + 1, 2) for j in range(i, index_bound + 1, 2)]
    out: List[Multisegment] = []

    def rec(start: int, left: int, acc: Dict):
        out.append(Multisegment(acc))
        for t in range(start, len(segs)):
            lo, hi = segs[t]
            size = (hi - lo) // 2 + 1
            if size <= left:
                acc[segs[t]] = acc.get(segs[t], 0) + 1
                rec(t, left - size, acc)
                acc[segs[t]] -= 1
                if not acc[segs[t]]:
                    del acc[segs[t]]

    rec(0, boxes, {})
    return out


def suite_bar(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("bar")
    ms = _basis(content_bound, index_bound)
    for m in ms:
        b = bar_vtheta(unit(m))
        res.record("vtheta-diagonal", b.coeff(m) == ONE, f"{m}")
        res.record("vtheta-triangular",
                   all(n == m or cry_cmp_multi(n, m) < 0 for n in b.keys()), lambda: f"{m}: {b}")
        res.record("vtheta-laurent", all(c.is_laurent() for c in b.terms.values()), f"{m}")
        res.record("vtheta-involution", bar_vtheta(b) == unit(m), f"{m}")
    rng = random.Random(seed)
    blocks: Dict[Weight, List[Multisegment]] = {}
    for m in ms:
        blocks.setdefault(theta_weight(m), []).append(m)
    keys = sorted(blocks, key=lambda w: w.items)
    for _ in range(60):
        v = _random_vector(rng, blocks[rng.choice(keys)])
        res.record("vtheta-random-involution", bar_vtheta(bar_vtheta(v)) == v, f"{v}")
        k = rng.choice(indices(index_bound))
        res.record("vtheta-commutes-with-F", bar_vtheta(apply_F(k, v)) == apply_F(k, bar_vtheta(v)), f"k={k} {v}")
    for m in _all_multisegments(content_bound, index_bound):
        b = bar_uq(pbw(m))
        res.record("uq-diagonal", b.coeff(m) == ONE, f"{m}")
        res.record("uq-triangular", all(n == m or cry_cmp_multi(n, m) < 0 for n, _ in b.items()), lambda: f"{m}: {b}")
        res.record("uq-laurent", all(c.is_laurent() for _, c in b.items()), f"{m}")
        res.record("uq-involution", bar_uq(b) == pbw(m), f"{m}")
    return res


# 7: global basis ----------------------------------------------------------------------


def suite_global(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("global")
    ms = _basis(content_bound, index_bound)
    for mu in _weights(ms):
        try:
            bm = globalbasis.bar_matrix(mu)
            lows = globalbasis.lower_global_block(mu)
        except globalbasis.ConsistencyError as exc:
            res.record("solve", False, f"{mu}: {exc}")
            continue
        inv = _bar_matrix_involutive(bm)
        res.record("bar-matrix-involutive", inv, f"{mu}")
        for g in lows:
            reason = globalbasis.check_lower(g)
            res.record("lower-global", reason is None, f"{g.top}: {reason}")
            v = g.vector()
            res.record("lower-congruent", _congruent(v, g.top), f"{g.top}")
        defects = globalbasis.balanced_defects(mu)
        res.record("unitriangular-both-ways", not defects, "; ".join(defects[:3]))
    for m in ms:
        for k in indices(index_bound):
            for n in (1, 2, 3):
                w = apply_divided_F(k, n, unit(m))
                res.record("integral-divided-powers", all(c.is_laurent() for c in w.terms.values()), f"k={k} n={n} m={m}")
    for word, w in _divided_orbit(content_bound, index_bound):
        res.record("divided-orbit-of-phi", all(c.is_laurent() for c in w.terms.values()), f"{word}")
    return res


def _divided_orbit(boxes: int, index_bound: int):
    """All ``F_{k_1}^(n_1) ... F_{k_r}^(n_r) phi`` with ``n_1 + ... + n_r <= boxes``."""
    ks = indices(index_bound - 2)
    frontier = [((), phi(), 0)]
    while frontier:
        nxt = []
        for word, v, used in frontier:
            for k in ks:
                for n in range(1, boxes - used + 1):
                    w = apply_divided_F(k, n, v)
                    if w:
                        yield word + ((k, n),), w
                        nxt.append((word + ((k, n),), w, used + n))
        frontier = nxt


def _bar_matrix_involutive(bm: globalbasis.BarMatrix) -> bool:
    """``C * bar(C) = 1``."""
    from . import linalg

    C = bm.rows()
    barC = [[x.bar() for x in row] for row in C]
    return linalg.mat_mul(C, barC) == linalg.identity(len(C))


# 8: bilinear form ---------------------------------------------------------------------


def suite_gram(content_bound: int, index_bound: int, seed: int = 0, upper: bool = True) -> SuiteResult:
    res = SuiteResult("gram")
    res.record("phi-norm", bilinear_form(phi(), phi()) == ONE, "(phi, phi)")
    ms = _basis(content_bound, index_bound)
    blocks: Dict[Weight, List[Multisegment]] = {}
    for m in ms:
        blocks.setdefault(theta_weight(m), []).append(m)
    for mu in _weights(ms):
        basis, G = vtheta.gram_matrix(mu)
        ok = True
        for r, row in enumerate(G):
            for c, x in enumerate(row):
                if x.ord() < 0 or x.at_zero() != (1 if r == c else 0):
                    ok = False
                if x != G[c][r]:
                    ok = False
        res.record("gram-identity-mod-q", ok, f"{mu}")
        if upper:
            lows = [g.vector() for g in globalbasis.lower_global_block(mu)]
            ups = globalbasis.upper_global(mu)
            dual = all(bilinear_form(x, y) == (ONE if a == b else ZERO)
                       for a, x in enumerate(lows) for b, y in enumerate(ups))
            res.record("upper-dual", dual, f"{mu}")
    rng = random.Random(seed)
    ks = indices(index_bound)
    small = [mu for mu in blocks if len(blocks[mu]) <= 12]
    for _ in range(80):
        mu = rng.choice(sorted(small, key=lambda w: w.items))
        u = _random_vector(rng, blocks[mu])
        k = rng.choice(ks)
        fu = apply_F(k, u)
        if not fu:
            continue
        v = _random_vector(rng, theta_weight_block(theta_weight(next(iter(fu.keys())))))
        res.record("adjunction", bilinear_form(apply_E(k, v), u) == bilinear_form(v, fu), f"k={k} u={u} v={v}")
        w = _random_vector(rng, blocks[mu])
        res.record("symmetry", bilinear_form(u, w) == bilinear_form(w, u), f"{u} {w}")
    return res


# 9: crystal combinatorics ------------------------------------------------------------


def suite_crystal(content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("crystal")
    ms = _basis(content_bound, index_bound)
    ks = indices(index_bound)
    for m in ms:
        for k in ks:
            eps = crystal.theta_epsilon(k, m)
            f = crystal.theta_F(k, m)
            e = crystal.theta_E(k, m)
            res.record("epsilon-routes", eps == crystal.theta_epsilon_by_sums(k, m), f"k={k} m={m}")
            res.record("F-routes", f == crystal.theta_F_by_sums(k, m), f"k={k} m={m}")
            res.record("E-routes", e == crystal.theta_E_by_sums(k, m), f"k={k} m={m}")
            res.record("F-closed", crystal.is_theta_restricted(f), f"k={k} m={m}")
            res.record("E-closed", e is None or crystal.is_theta_restricted(e), f"k={k} m={m}")
            res.record("EF-identity", crystal.theta_E(k, f) == m, f"k={k} m={m}")
            if e is not None:
                res.record("FE-identity", crystal.theta_F(k, e) == m, f"k={k} m={m}")
            n, x = 0, m
            while True:
                x = crystal.theta_E(k, x)
                if x is None:
                    break
                n += 1
            res.record("epsilon-string", n == eps, f"k={k} m={m}")
        all_zero = all(crystal.theta_epsilon(k, m) == 0 for k in indices(m.max_abs_index()))
        res.record("unique-highest-weight", all_zero == (m == EMPTY), f"{m}")
        path = crystal.highest_weight_path(m)
        x = EMPTY
        for k in reversed(path):
            x = crystal.theta_F(k, x)
        res.record("reach-from-empty", x == m, f"{m}: {path}")
    for m in _all_multisegments(content_bound, index_bound):
        for k in range(1, index_bound + 3, 2):
            for kk in (k, -k):
                res.record("classical-routes",
                           crystal.classical_f(kk, m) == crystal.classical_f_by_sums(kk, m)
                           and crystal.classical_e(kk, m) == crystal.classical_e_by_sums(kk, m)
                           and crystal.classical_epsilon(kk, m) == crystal.classical_epsilon_by_sums(kk, m),
                           f"i={kk} m={m}")
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "straighten": suite_straighten,
    "realize": suite_realize,
    "oracle": suite_oracle,
    "qboson": suite_qboson,
    "serre": suite_serre,
    "crystal-congruence": suite_crystal_congruence,
    "bounds": suite_bounds,
    "bar": suite_bar,
    "global": suite_global,
    "gram": suite_gram,
    "crystal": suite_crystal,
}


def run_suite(name: str, content_bound: int, index_bound: int, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t = time.perf_counter()
    res = SUITES[name](content_bound, index_bound, seed)
    res.seconds = time.perf_counter() - t
    return res
