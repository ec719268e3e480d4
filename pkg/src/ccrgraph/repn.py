"""Exact representation theory at desk scale.

Modules are given by the matrices of a finite list of algebra generators.
:func:`chop` splits a module into composition factors with a MeatAxe-style
search: take a random algebra element, factor its characteristic polynomial,
and spin kernel vectors.  A factor is declared simple only with a Norton
certificate (or, after the retry budget, an exhaustive probe-set check).

Endomorphism and Hom dimensions use the spin linear system: a homomorphism
out of a simple module is pinned down by the image of one vector, and that
image must lie in the matching kernel of the target.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

from .fields import Field, GF, Rationals
from .groups import Group
from .linalg import (
    EchelonBasis,
    Matrix,
    Vector,
    charpoly,
    flatten,
    identity,
    inverse,
    is_zero_vector,
    mat_add,
    mat_scale,
    matmul,
    matvec,
    nullspace,
    rank,
    rref,
    solve,
    spin,
    transpose,
    zeros,
)
from .poly import deg, eval_matrix, factor

__all__ = [
    "ReprError",
    "RepnLimits",
    "MatrixAlgebraModule",
    "CompositionFactor",
    "CompositionSeries",
    "regular_module",
    "group_element_matrix",
    "scalar_module",
    "splitting_field",
    "chop",
    "is_simple",
    "endo_dim",
    "hom_dim",
    "commutant_dim",
    "algebra_basis",
    "clifford_check",
    "matrix_amplification_check",
    "corner_simples_check",
]


class ReprError(ValueError):
    pass


@dataclass(frozen=True)
class RepnLimits:
    max_group_order: int = 48
    max_dim: int = 64
    max_algebra_dim: int = 16
    max_amplification: int = 4
    retries: int = 64


DEFAULT_LIMITS = RepnLimits()

Word = tuple[int, ...]
# a linear combination of generator words, and a product of such combinations
Combo = tuple[tuple[Any, Word], ...]
Element = tuple[Combo, ...]


@dataclass
class MatrixAlgebraModule:
    field: Field
    generators: list[Matrix]
    dimension: int
    name: str = ""

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != self.dimension or any(len(r) != self.dimension for r in g):
                raise ReprError("generator shape does not match the module dimension")

    def word_matrix(self, word: Word) -> Matrix:
        """``g[w0] g[w1] ... g[wk]``; the empty word is the identity."""
        out = identity(self.field, self.dimension)
        for i in reversed(word):
            out = matmul(self.field, self.generators[i], out)
        return out

    def combo_matrix(self, combo: Combo) -> Matrix:
        F = self.field
        out = zeros(F, self.dimension)
        for c, w in combo:
            out = mat_add(F, out, mat_scale(F, c, self.word_matrix(w)))
        return out

    def element_matrix(self, elem: Element) -> Matrix:
        out = identity(self.field, self.dimension)
        for combo in elem:
            out = matmul(self.field, out, self.combo_matrix(combo))
        return out

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.name,
            "dimension": self.dimension,
            "generators": [[[F.to_json(a) for a in row] for row in g] for g in self.generators],
        }


# construction -------------------------------------------------------------

def group_element_matrix(G: Group, F: Field, g: int) -> Matrix:
    """Permutation matrix of left multiplication by ``g`` on the basis ``G``."""
    M = zeros(F, G.order)
    for h in range(G.order):
        M[G.mul(g, h)][h] = F.one
    return M


def splitting_field(G: Group, F: Field) -> Field:
    """Smallest field of characteristic ``char F`` containing ``exponent(G)``-th
    roots of unity, i.e. the least ``p^k`` with ``exponent | p^k - 1``."""
    if isinstance(F, Rationals):
        raise ReprError("no finite splitting field over the rationals; choose a prime power")
    p, e = F.characteristic, G.exponent
    if e % p == 0:
        raise ReprError(f"characteristic {p} divides the exponent of {G.name}")
    k = 1
    while (p ** k - 1) % e:
        k += 1
    q = p ** k
    if F.order is not None and (F.order - 1) % e == 0:
        return F
    return GF(q)


def regular_module(
    G: Group,
    F: Field,
    *,
    split: bool = False,
    require_semisimple: bool = False,
    limits: RepnLimits = DEFAULT_LIMITS,
) -> MatrixAlgebraModule:
    """Left regular module of ``FG`` on the generators of ``G``.  With
    ``split`` the field is first enlarged to a splitting field."""
    if G.order > limits.max_group_order:
        raise ReprError(f"group order {G.order} exceeds the cap {limits.max_group_order}")
    if split:
        F = splitting_field(G, F)
    if require_semisimple and F.characteristic and G.order % F.characteristic == 0:
        raise ReprError(f"characteristic {F.characteristic} divides |{G.name}| = {G.order}")
    gens = [group_element_matrix(G, F, g) for g in G.generators]
    return MatrixAlgebraModule(F, gens, G.order, name=f"{F.name}{G.name}")


def scalar_module(F: Field) -> MatrixAlgebraModule:
    """The field acting on itself."""
    return MatrixAlgebraModule(F, [identity(F, 1)], 1, name=F.name)


# sub and quotient ---------------------------------------------------------

def _complete_basis(F: Field, basis: Sequence[Vector], n: int) -> list[Vector]:
    eb = EchelonBasis(F, n)
    for v in basis:
        eb.add(v)
    out = list(basis)
    for i in range(n):
        e = [F.zero] * n
        e[i] = F.one
        if eb.add(e):
            out.append(e)
    return out


def _split(M: MatrixAlgebraModule, sub: Sequence[Vector]) -> tuple[MatrixAlgebraModule, MatrixAlgebraModule]:
    F, d, s = M.field, M.dimension, len(sub)
    P = transpose(_complete_basis(F, sub, d))
    Pinv = inverse(F, P)
    subs, quots = [], []
    for g in M.generators:
        h = matmul(F, Pinv, matmul(F, g, P))
        subs.append([row[:s] for row in h[:s]])
        quots.append([row[s:] for row in h[s:]])
    return MatrixAlgebraModule(F, subs, s), MatrixAlgebraModule(F, quots, d - s)


def restrict(F: Field, X: Matrix, basis: Sequence[Vector]) -> Matrix:
    """Matrix of ``X`` on an ``X``-stable subspace with the given basis."""
    n, s = len(X), len(basis)
    P = transpose(_complete_basis(F, basis, n))
    h = matmul(F, inverse(F, P), matmul(F, X, P))
    if any(h[i][j] != F.zero for i in range(s, n) for j in range(s)):
        raise ReprError("subspace is not stable")
    return [row[:s] for row in h[:s]]


def column_space(F: Field, X: Matrix) -> list[Vector]:
    return rref(F, transpose(X))[0]


# splitting ----------------------------------------------------------------

def _random_combo(M: MatrixAlgebraModule, rng: random.Random) -> Combo:
    F, k = M.field, len(M.generators)
    terms = []
    for _ in range(rng.randint(2, 4)):
        word = tuple(rng.randrange(k) for _ in range(rng.randint(0, 3))) if k else ()
        c = F.random(rng)
        if c != F.zero:
            terms.append((c, word))
    return tuple(terms)


def _spin_all(F: Field, gens: Sequence[Matrix], v: Vector) -> list[Vector]:
    return spin(F, gens, [v])


@dataclass
class _Verdict:
    sub: list[Vector] | None
    certified: bool


def _find_submodule(M: MatrixAlgebraModule, rng: random.Random, limits: RepnLimits) -> _Verdict:
    F, d, gens = M.field, M.dimension, M.generators
    if d <= 1:
        return _Verdict(None, True)
    tgens = [transpose(g) for g in gens]
    for _ in range(limits.retries):
        A = M.combo_matrix(_random_combo(M, rng))
        for p, _m in factor(F, charpoly(F, A)):
            P = eval_matrix(F, p, A)
            ker = nullspace(F, P, d)
            S = _spin_all(F, gens, ker[0])
            if len(S) < d:
                return _Verdict(S, True)
            if len(ker) == deg(p):
                kt = nullspace(F, transpose(P), d)
                T = _spin_all(F, tgens, kt[0])
                if len(T) < d:
                    return _Verdict(nullspace(F, T, d), True)
                return _Verdict(None, True)
    # exhaustive fallback over the basis probe set, both sides
    for gs, dual in ((gens, False), (tgens, True)):
        for i in range(d):
            e = [F.zero] * d
            e[i] = F.one
            S = _spin_all(F, gs, e)
            if len(S) < d:
                return _Verdict(nullspace(F, S, d) if dual else S, True)
    return _Verdict(None, False)


def is_simple(M: MatrixAlgebraModule, seed: int = 0, limits: RepnLimits = DEFAULT_LIMITS) -> bool:
    if M.dimension == 0:
        return False
    return _find_submodule(M, random.Random(seed), limits).sub is None


def cyclic_probe(M: MatrixAlgebraModule, rng: random.Random, extra: int = 4) -> bool:
    """Every probe vector (the standard basis plus ``extra`` random nonzero
    vectors) spins to the whole module."""
    F, d = M.field, M.dimension
    probes = []
    for i in range(d):
        e = [F.zero] * d
        e[i] = F.one
        probes.append(e)
    for _ in range(extra):
        v = [F.random(rng) for _ in range(d)]
        if not is_zero_vector(F, v):
            probes.append(v)
    return all(len(_spin_all(F, M.generators, v)) == d for v in probes)


# homomorphisms ------------------------------------------------------------

def _spin_tree(F: Field, gens: Sequence[Matrix], v: Vector) -> tuple[list[Vector], list[tuple[int, int]]]:
    """Spin basis from ``v`` plus, for each vector after the first, the
    (parent index, generator index) that produced it."""
    eb = EchelonBasis(F, len(v))
    eb.add(v)
    basis, tree = [list(v)], [(-1, -1)]
    i = 0
    while i < len(basis):
        for k, g in enumerate(gens):
            w = matvec(F, g, basis[i])
            if eb.add(w):
                basis.append(w)
                tree.append((i, k))
        i += 1
    return basis, tree


def _hom_from(S: MatrixAlgebraModule, T: MatrixAlgebraModule, v: Vector, kernel_T: list[Vector]) -> int:
    """Dimension of ``Hom(S, T)`` given that ``v`` generates ``S`` and every
    homomorphism sends ``v`` into the span of ``kernel_T``."""
    F = S.field
    k = len(kernel_T)
    if k == 0:
        return 0
    basis, tree = _spin_tree(F, S.generators, v)
    d = len(basis)
    if d != S.dimension:
        raise ReprError("source module is not cyclic on the chosen vector")
    Binv = inverse(F, transpose(basis))
    # images[i][j] = W_i(n_j), where b_i = W_i(v)
    images: list[list[Vector]] = [list(kernel_T)]
    for i in range(1, d):
        parent, g = tree[i]
        images.append([matvec(F, T.generators[g], x) for x in images[parent]])
    rows: list[Vector] = []
    for gS, gT in zip(S.generators, T.generators):
        for i in range(d):
            coords = matvec(F, Binv, matvec(F, gS, basis[i]))
            # g phi(b_i) - phi(g b_i), one column per unknown
            cols = []
            for j in range(k):
                vec = matvec(F, gT, images[i][j])
                for t, c in enumerate(coords):
                    if c != F.zero:
                        vec = [F.sub(a, F.mul(c, b)) for a, b in zip(vec, images[t][j])]
                cols.append(vec)
            rows.extend([list(r) for r in zip(*cols)])
    return k - rank(F, rows)


def hom_dim(
    S: MatrixAlgebraModule,
    T: MatrixAlgebraModule,
    seed: int = 0,
    *,
    rng: random.Random | None = None,
    tries: int = 3,
) -> int:
    """``dim Hom(S, T)`` for a simple ``S``; both modules must present the
    same generators over the same field."""
    if S.field != T.field or len(S.generators) != len(T.generators):
        raise ReprError("modules are over different algebras")
    F = S.field
    rng = rng or random.Random(seed)
    if S.dimension == 0 or T.dimension == 0:
        return 0
    best = None
    for _ in range(tries):
        combo = _random_combo(S, rng)
        AS, AT = S.combo_matrix(combo), T.combo_matrix(combo)
        for p, _m in factor(F, charpoly(F, AS)):
            kS = nullspace(F, eval_matrix(F, p, AS), S.dimension)
            kT = nullspace(F, eval_matrix(F, p, AT), T.dimension)
            if best is None or len(kT) < len(best[1]):
                best = (kS[0], kT)
        if best is not None and len(best[1]) <= 1:
            break
    if best is None:  # no generators: S is one-dimensional
        best = ([F.one], [[F.one if i == j else F.zero for i in range(T.dimension)]
                          for j in range(T.dimension)])
    return _hom_from(S, T, best[0], best[1])


def endo_dim(S: MatrixAlgebraModule, seed: int = 0, *, check: bool = True,
             limits: RepnLimits = DEFAULT_LIMITS) -> int:
    """Dimension of the endomorphism ring of a simple module."""
    if check and not is_simple(S, seed, limits):
        raise ReprError("endo_dim requires a simple module")
    return hom_dim(S, S, seed)


def commutant_dim(M: MatrixAlgebraModule) -> int:
    """Dimension of ``{X : Xg = gX}`` by solving for all ``d^2`` entries.
    Independent of the spin method; used as its oracle."""
    F, d = M.field, M.dimension
    rows = []
    for g in M.generators:
        for i in range(d):
            for j in range(d):
                # (Xg - gX)[i][j] = sum_k X[i][k] g[k][j] - g[i][k] X[k][j]
                row = [F.zero] * (d * d)
                for k in range(d):
                    row[i * d + k] = F.add(row[i * d + k], g[k][j])
                    row[k * d + j] = F.sub(row[k * d + j], g[i][k])
                rows.append(row)
    return d * d - rank(F, rows) if rows else d * d


# composition series -------------------------------------------------------

@dataclass
class CompositionFactor:
    module: MatrixAlgebraModule
    multiplicity: int
    endo_dim: int
    certified: bool
    cyclic_probe: bool

    @property
    def dimension(self) -> int:
        return self.module.dimension

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "multiplicity": self.multiplicity,
            "endo_dim": self.endo_dim,
            "certified": self.certified,
            "cyclic_probe": self.cyclic_probe,
        }


@dataclass
class CompositionSeries:
    field: Field
    dimension: int
    factors: list[CompositionFactor]
    layers: list[int]   # factor index of each layer, bottom to top
    seed: int

    def dims(self) -> list[int]:
        return [f.dimension for f in self.factors]

    def multiset(self) -> list[tuple[int, int, int]]:
        """Sorted ``(dimension, endo_dim, multiplicity)`` triples."""
        return sorted((f.dimension, f.endo_dim, f.multiplicity) for f in self.factors)

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "dimension": self.dimension,
            "seed": self.seed,
            "factors": [f.to_json() for f in self.factors],
            "layers": list(self.layers),
        }


def chop(M: MatrixAlgebraModule, seed: int = 0, limits: RepnLimits = DEFAULT_LIMITS) -> CompositionSeries:
    """Composition factors of ``M`` up to isomorphism, with multiplicities.
    Factors are ordered by dimension, then by first appearance."""
    if M.dimension > limits.max_dim:
        raise ReprError(f"module dimension {M.dimension} exceeds the cap {limits.max_dim}")
    rng = random.Random(seed)
    layers: list[tuple[MatrixAlgebraModule, bool]] = []
    stack = [M]
    while stack:
        mod = stack.pop()
        if mod.dimension == 0:
            continue
        v = _find_submodule(mod, rng, limits)
        if v.sub is None:
            layers.append((mod, v.certified))
        else:
            sub, quot = _split(mod, v.sub)
            stack.append(quot)   # handled after sub
            stack.append(sub)
    reps: list[list] = []   # [module, multiplicity, certified]
    layer_ids = []
    for mod, cert in layers:
        for idx, r in enumerate(reps):
            if r[0].dimension == mod.dimension and hom_dim(r[0], mod, rng=rng) > 0:
                r[1] += 1
                r[2] = r[2] and cert
                layer_ids.append(idx)
                break
        else:
            reps.append([mod, 1, cert])
            layer_ids.append(len(reps) - 1)
    order = sorted(range(len(reps)), key=lambda i: (reps[i][0].dimension, i))
    remap = {old: new for new, old in enumerate(order)}
    factors = []
    for i in order:
        mod, mult, cert = reps[i]
        factors.append(CompositionFactor(
            mod, mult, hom_dim(mod, mod, rng=rng), cert, cyclic_probe(mod, rng)))
    total = sum(f.dimension * f.multiplicity for f in factors)
    if total != M.dimension:
        raise AssertionError("dimension bookkeeping failed")
    return CompositionSeries(M.field, M.dimension, factors, [remap[i] for i in layer_ids], seed)


# algebra span -------------------------------------------------------------

def algebra_basis(M: MatrixAlgebraModule, limits: RepnLimits = DEFAULT_LIMITS) -> list[Word]:
    """Words whose matrices form a basis of the image of the algebra."""
    F, d = M.field, M.dimension
    eb = EchelonBasis(F, d * d)
    words: list[Word] = []
    mats: list[Matrix] = []
    eb.add(flatten(identity(F, d)))
    words.append(())
    mats.append(identity(F, d))
    i = 0
    while i < len(words):
        for k, g in enumerate(M.generators):
            X = matmul(F, g, mats[i])
            if eb.add(flatten(X)):
                words.append((k,) + words[i])
                mats.append(X)
                if len(words) > limits.max_algebra_dim:
                    raise ReprError(
                        f"algebra dimension exceeds the cap {limits.max_algebra_dim}")
        i += 1
    return words


def express(M: MatrixAlgebraModule, X: Matrix, words: Sequence[Word]) -> Combo | None:
    """``X`` as a combination of the given words, or None if outside their span."""
    F = M.field
    cols = [flatten(M.word_matrix(w)) for w in words]
    sol = solve(F, transpose(cols), flatten(X))
    if sol is None:
        return None
    return tuple((c, w) for c, w in zip(sol, words) if c != F.zero)


# checks -------------------------------------------------------------------

def _factor_rows(cs: CompositionSeries) -> list[dict]:
    return [f.to_json() for f in cs.factors]


def clifford_check(
    G: Group,
    H: Sequence[int],
    F: Field,
    seed: int = 0,
    *,
    split: bool = False,
    limits: RepnLimits = DEFAULT_LIMITS,
) -> dict:
    """Simple ``FG``-modules have dimension at most ``[G:H]`` when ``H`` is a
    normal abelian subgroup and ``F`` splits ``G``."""
    H = tuple(sorted(H))
    if not G.is_subgroup(H):
        raise ReprError("H is not a subgroup")
    if not G.is_normal(H):
        raise ReprError("H is not normal in G")
    if not G.is_abelian(H):
        raise ReprError("H is not abelian")
    if F.characteristic and G.order % F.characteristic == 0:
        raise ReprError(f"characteristic {F.characteristic} divides |G| = {G.order}")
    if split:
        F = splitting_field(G, F)
    n = G.order // len(H)
    M = regular_module(G, F, require_semisimple=True, limits=limits)
    cs = chop(M, seed, limits)
    bad = [f for f in cs.factors if f.endo_dim != 1]
    if bad:
        f = bad[0]
        raise ReprError(
            f"{F.name} does not split {G.name}: factor of dimension {f.dimension} "
            f"has endo_dim {f.endo_dim}")
    max_dim = max(cs.dims())
    return {
        "check": "clifford",
        "group": G.name,
        "subgroup": [G.labels[h] for h in H],
        "field": F.name,
        "seed": seed,
        "bound": n,
        "factors": _factor_rows(cs),
        "max_dim": max_dim,
        "passed": max_dim <= n,
    }


def amplify(M: MatrixAlgebraModule, n: int) -> MatrixAlgebraModule:
    """``V^n`` as a module for ``M_n(A)``: each generator in the top-left
    slot, plus the adjacent matrix units tensored with the identity."""
    F, d = M.field, M.dimension
    N = n * d

    def block(i: int, j: int, X: Matrix) -> Matrix:
        out = zeros(F, N)
        for r in range(d):
            for c in range(d):
                out[i * d + r][j * d + c] = X[r][c]
        return out

    gens = [block(0, 0, g) for g in M.generators]
    if not M.generators:
        gens.append(block(0, 0, identity(F, d)))
    I = identity(F, d)
    for i in range(n - 1):
        gens.append(block(i, i + 1, I))
        gens.append(block(i + 1, i, I))
    return MatrixAlgebraModule(F, gens, N, name=f"M{n}({M.name})")


def matrix_amplification_check(
    M: MatrixAlgebraModule, n: int, seed: int = 0, limits: RepnLimits = DEFAULT_LIMITS
) -> dict:
    """Simples of ``M_n(A)`` are ``W^n`` for simples ``W`` of ``A``, with the
    same endomorphism rings."""
    if not 1 <= n <= limits.max_amplification:
        raise ReprError(f"n must be between 1 and {limits.max_amplification}")
    algebra_basis(M, limits)   # enforces the algebra dimension cap
    base = chop(M, seed, limits)
    amp = chop(amplify(M, n), seed, limits)
    expected = sorted((n * d, e, m) for d, e, m in base.multiset())
    got = amp.multiset()
    return {
        "check": "matrix_amplification",
        "field": M.field.name,
        "n": n,
        "seed": seed,
        "base_factors": _factor_rows(base),
        "amplified_factors": _factor_rows(amp),
        "expected": [list(t) for t in expected],
        "passed": got == expected,
    }


def _corner(W: MatrixAlgebraModule, e: Combo, corner_gens: list[Element]) -> MatrixAlgebraModule:
    F = W.field
    U = column_space(F, W.combo_matrix(e))
    gens = [restrict(F, W.element_matrix(x), U) for x in corner_gens] if U else []
    return MatrixAlgebraModule(F, gens, len(U))


def corner_simples_check(
    M: MatrixAlgebraModule, e: Matrix, seed: int = 0, limits: RepnLimits = DEFAULT_LIMITS
) -> dict:
    """For an idempotent ``e`` of the algebra, ``eW`` is zero or a simple
    ``eAe``-module with the same endomorphism dimension as ``W``, and every
    simple ``eAe``-module appearing in ``eM`` is of that form."""
    F = M.field
    if matmul(F, e, e) != [list(r) for r in e]:
        raise ReprError("e is not idempotent")
    words = algebra_basis(M, limits)
    ecombo = express(M, e, words)
    if ecombo is None:
        raise ReprError("e does not lie in the algebra")
    corner_gens: list[Element] = [(ecombo, ((F.one, w),), ecombo) for w in words]
    cs = chop(M, seed, limits)
    rng = random.Random(seed)
    rows = []
    images: list[tuple[MatrixAlgebraModule, int]] = []
    ok = True
    for f in cs.factors:
        C = _corner(f.module, ecombo, corner_gens)
        row: dict = {"dimension": f.dimension, "multiplicity": f.multiplicity,
                     "endo_dim": f.endo_dim, "corner_dim": C.dimension}
        if C.dimension:
            simple = is_simple(C, seed, limits)
            ce = hom_dim(C, C, rng=rng) if simple else None
            row.update({"corner_simple": simple, "corner_endo_dim": ce})
            ok = ok and simple and ce == f.endo_dim
            images.append((C, f.multiplicity))
        rows.append(row)
    whole = _corner(M, ecombo, corner_gens)
    corner_cs = chop(whole, seed, limits) if whole.dimension else None
    matched = True
    if corner_cs is not None:
        for g in corner_cs.factors:
            hits = [m for C, m in images
                    if C.dimension == g.dimension and hom_dim(g.module, C, rng=rng) > 0]
            matched = matched and hits == [g.multiplicity]
        matched = matched and len(corner_cs.factors) == len(images)
    bookkeeping = sum(C.dimension * m for C, m in images) == whole.dimension
    return {
        "check": "corner_simples",
        "field": F.name,
        "seed": seed,
        "algebra_dim": len(words),
        "corner_module_dim": whole.dimension,
        "factors": rows,
        "corner_factors": _factor_rows(corner_cs) if corner_cs else [],
        "bookkeeping": bookkeeping,
        "passed": ok and matched and bookkeeping,
    }
