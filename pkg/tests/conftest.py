import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qpsilt import AlgElem, Quiver, QuiverWithPotential, jacobian_algebra, normalize_potential, path_algebra
from qpsilt.exactlin import QQ
from qpsilt.presentation import make_context
from qpsilt.twoterm import silting_mutate, stalk

DATA = Path(__file__).parent.parent / "src" / "qpsilt" / "data"


def three_cycle_qp(field=None):
    q = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)])
    kw = {"field": field} if field is not None else {}
    w = normalize_potential(AlgElem(q, {q.path("a", "b", "c"): 1}, **kw))
    return QuiverWithPotential(q, w)


@pytest.fixture(scope="session")
def J3():
    return jacobian_algebra(three_cycle_qp())


@pytest.fixture(scope="session")
def J3_Q():
    return jacobian_algebra(three_cycle_qp(QQ))


@pytest.fixture(scope="session")
def A2():
    return path_algebra(Quiver([1, 2], [("a", 1, 2)]))


@pytest.fixture(scope="session")
def ctx_J3(J3):
    return make_context(J3, [stalk(J3, (v,)) for v in range(3)])


@pytest.fixture(scope="session")
def ctx_A2(A2):
    # P_1 together with [P_2 -a-> P_1]
    return make_context(A2, silting_mutate([stalk(A2, (0,)), stalk(A2, (1,))], 1, "L"))


@pytest.fixture(scope="session")
def ctx_J3_mutated(J3):
    return make_context(J3, silting_mutate([stalk(J3, (v,)) for v in range(3)], 0, "L"))


@pytest.fixture(scope="session")
def ctx_A2_shifted(A2):
    # P_2 together with Sigma P_1: Hom(M, Sigma^-1 M) is nonzero here
    return make_context(A2, [stalk(A2, (1,)), stalk(A2, (0,)).shift(1)])


def random_two_term(alg, rng, max_mult=2):
    """A two-term complex with random multiplicities and random entries in the right corners."""
    from qpsilt.twoterm import two_term
    f = alg.field
    minus = tuple(v for v in range(alg.n) for _ in range(int(rng.integers(0, max_mult + 1))))
    zero = tuple(v for v in range(alg.n) for _ in range(int(rng.integers(0, max_mult + 1))))
    d = f.zeros((len(zero), len(minus), alg.dim))
    for t, w in enumerate(zero):
        for s, v in enumerate(minus):
            for b in alg.corner(w, v):
                d[t, s, b] = f.random(rng, ())
    return two_term(alg, minus, zero, d)


def _triangular(ctx, idx, rng):
    """A random invertible upper-triangular A-matrix on sum(M_idx): unit scalars plus radical terms."""
    A, f = ctx.A, ctx.field
    n = len(idx)
    T = f.zeros((n, n, A.dim))
    for t in range(n):
        for s in range(t, n):
            corner = [int(b) for b in A.corner(idx[t], idx[s])]
            if t == s:
                T[t, t] = A.idem(idx[t]) * f(int(rng.integers(1, 7)))
                corner = [b for b in corner if b != A.idempotents[idx[t]]]
            if corner:
                T[t, s, corner] = f.random(rng, len(corner))
    return T


def _permutation(ctx, src, tgt):
    """The A-matrix sum(M_src) -> sum(M_tgt) sending each position to the next free equal label."""
    A, f = ctx.A, ctx.field
    P = f.zeros((len(tgt), len(src), A.dim))
    used = set()
    for s, v in enumerate(src):
        t = next(t for t, w in enumerate(tgt) if w == v and t not in used)
        used.add(t)
        P[t, s] = A.idem(v)
    return P


def twisted(ctx, x, rng):
    """The presented object with matrix U a V for random invertible U, V (and reordered summands)."""
    from qpsilt.complexes import compose_mor
    A = ctx.A
    zero = tuple(x.zero[k] for k in rng.permutation(len(x.zero)))
    minus = tuple(x.minus[k] for k in rng.permutation(len(x.minus)))
    if not (zero and minus):
        return ctx.present(minus, zero)
    U = compose_mor(A, _permutation(ctx, x.zero, zero), _triangular(ctx, x.zero, rng))
    V = compose_mor(A, _triangular(ctx, x.minus, rng), _permutation(ctx, minus, x.minus))
    return ctx.present(minus, zero, compose_mor(A, compose_mor(A, U, x.a), V))


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion at the end of the run

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, secs, budget, detail = ACCEPTANCE[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f} s, budget {budget} s){detail}")
