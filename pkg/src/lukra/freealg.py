"""Free algebras on m generators for the n-valued delta classes.

The free algebra is realized concretely: every simple algebra is a chain
with delta of size k <= n, so the free algebra on m generators is the
closure of the m "evaluation tuples" inside the product over all chains
of size 2 <= k <= n and all valuations of the generators into them.
Chains below n must be included as codomains in their own right: the
crisp operator on a k-subchain of the n-chain disagrees with the ambient
one, so valuations into the n-chain alone would under-generate.

Cardinalities admit a closed form via inclusion-exclusion over the
principal up-sets of the delta'd generators; the correction sum of the
printed recurrence conflates its indices, so both a repaired and a
literal reading are implemented and an independent counting oracle
adjudicates between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product
from math import comb

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    InternalConsistencyError,
    SizeGuardError,
    epimorphisms,
    make_chain,
    restrict_to,
)

SIZE_GUARD = 10**6


class FormulaReadingError(AlgebraError):
    """A cardinality-recurrence mode produced an impossible intermediate."""


@dataclass(frozen=True)
class SizeBreakdown:
    """Closed-form cardinality of the free algebra, with its ingredients.

    beta[(i, k)] is the exponent of i in |N_k|; nk[k-1] = |N_k|; the total
    is the alternating binomial sum over k = 1..m.
    """
    n: int
    m: int
    mode: str
    beta: dict[tuple[int, int], int]
    nk: tuple[int, ...]
    total: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "mode": self.mode,
            "beta": [
                {"i": i, "k": k, "value": v}
                for (i, k), v in sorted(self.beta.items())
            ],
            "nk": list(self.nk),
            "terms": [
                (-1) ** (k + 1) * comb(self.m, k) * self.nk[k - 1]
                for k in range(1, self.m + 1)
            ],
            "total": self.total,
        }


@dataclass(frozen=True)
class FreeAlgebra:
    """The free algebra plus its concrete coordinates.

    `vectors[e]` is element e's tuple over the ambient product; coordinate
    c lives in the chain of size `coord_sizes[c]`.  Coordinates are laid
    out chain size ascending, valuations in lexicographic order of the
    generator images, so carriers are reproducible across runs.
    """
    n: int
    m: int
    algebra: FiniteAlgebra
    generators: tuple[int, ...]
    coord_sizes: tuple[int, ...]
    vectors: tuple[tuple[int, ...], ...]

    def generator_valuation(self) -> dict[str, int]:
        return {f"g{i + 1}": g for i, g in enumerate(self.generators)}


def size_formula(n: int, m: int, mode: str = "repaired") -> SizeBreakdown:
    """Evaluate the cardinality formula.

    `repaired` reads the correction sum of the exponent recurrence as
    running over j with (j-1) | (i-1), j != i -- the analogue of the
    epimorphism-count recurrence; `literal` keeps the printed condition
    (j-1) | (k-1), j != k, restricted to already-computed j < i so it is
    computable at all.  Negative intermediates raise FormulaReadingError.
    """
    if n < 2 or m < 1:
        raise AlgebraError("need n >= 2 and m >= 1")
    if mode not in ("repaired", "literal"):
        raise AlgebraError(f"unknown mode {mode!r}")
    beta: dict[tuple[int, int], int] = {}
    nk = []
    for k in range(1, m + 1):
        for i in range(2, n + 1):
            lead = (i - 1) ** k * i ** (m - k)
            if mode == "repaired":
                corr = sum(
                    beta[(j, k)]
                    for j in range(2, i)
                    if (i - 1) % (j - 1) == 0
                )
            else:
                corr = sum(
                    beta[(j, k)]
                    for j in range(2, i)
                    if k == 1 or (j != k and (k - 1) % (j - 1) == 0)
                )
            value = lead - corr
            if value < 0:
                raise FormulaReadingError(
                    f"beta_{i}({k}) = {value} < 0 under mode {mode!r}"
                )
            beta[(i, k)] = value
        size = 1
        for i in range(2, n + 1):
            size *= i ** beta[(i, k)]
        nk.append(size)
    total = sum(
        (-1) ** (k + 1) * comb(m, k) * nk[k - 1] for k in range(1, m + 1)
    )
    return SizeBreakdown(n=n, m=m, mode=mode, beta=beta, nk=tuple(nk), total=total)


def v_formula(m: int, k: int) -> int:
    """Epimorphism count onto the k-chain from the free bounded algebra on
    m generators: k^m minus the counts for the subchains (j-1) | (k-1)."""
    if k < 2:
        raise AlgebraError("need k >= 2")

    @lru_cache(maxsize=None)
    def v(kk: int) -> int:
        return kk**m - sum(
            v(j) for j in range(2, kk) if (kk - 1) % (j - 1) == 0
        )

    return v(k)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _vec_ops(coord_sizes):
    maxes = tuple(s - 1 for s in coord_sizes)

    def vimp(u, v):
        return tuple(
            mm if mm - a + b > mm else (0 if mm - a + b < 0 else mm - a + b)
            for a, b, mm in zip(u, v, maxes)
        )

    def vdelta(u):
        return tuple(mm if a == mm else 0 for a, mm in zip(u, maxes))

    return vimp, vdelta, maxes


@lru_cache(maxsize=None)
def build_free(n: int, m: int, guard: int = SIZE_GUARD) -> FreeAlgebra:
    """Construct the free algebra on m generators at level n.

    Refuses when the closed-form size estimate exceeds `guard`.  The result
    is checked for nothing here; tests confirm it satisfies the variety
    checks and the structure lemmas.
    """
    predicted = size_formula(n, m).total
    if predicted > guard:
        raise SizeGuardError(
            f"predicted size {predicted} exceeds guard {guard}"
        )
    coord_sizes = []
    gen_vectors = [[] for _ in range(m)]
    for k in range(2, n + 1):
        for valuation in iter_product(range(k), repeat=m):
            coord_sizes.append(k)
            for i in range(m):
                gen_vectors[i].append(valuation[i])
    coord_sizes = tuple(coord_sizes)
    vimp, vdelta, maxes = _vec_ops(coord_sizes)

    top = tuple(maxes)
    members = {top}
    queue = [top]
    for g in gen_vectors:
        gv = tuple(g)
        if gv not in members:
            members.add(gv)
            queue.append(gv)
    discovered = list(queue)
    frontier = 0
    while frontier < len(discovered):
        u = discovered[frontier]
        frontier += 1
        for v in tuple(discovered):
            for w in (vimp(u, v), vimp(v, u)):
                if w not in members:
                    members.add(w)
                    discovered.append(w)
        w = vdelta(u)
        if w not in members:
            members.add(w)
            discovered.append(w)

    vectors = tuple(sorted(members))
    index = {v: i for i, v in enumerate(vectors)}
    size = len(vectors)
    imp = tuple(
        tuple(index[vimp(u, v)] for v in vectors) for u in vectors
    )
    delta = tuple(index[vdelta(u)] for u in vectors)
    algebra = FiniteAlgebra(
        size=size, imp=imp, top=index[top], delta=delta,
        label=f"Free(n={n},m={m})",
    )
    generators = tuple(index[tuple(g)] for g in gen_vectors)
    return FreeAlgebra(
        n=n, m=m, algebra=algebra, generators=generators,
        coord_sizes=coord_sizes, vectors=vectors,
    )


def minimal_elements(F: FreeAlgebra) -> tuple[int, ...]:
    """Minimal elements of the free algebra's derived order.

    Verifies the structure facts on the way out: the minimal elements are
    exactly the delta'd generators, and the carrier is the union of the
    intervals [delta g, top].
    """
    A = F.algebra
    mins = A.minimal_elements()
    dgens = tuple(sorted({A.delta[g] for g in F.generators}))
    if mins != dgens:
        raise InternalConsistencyError(
            f"minimal elements {mins} differ from delta'd generators {dgens}"
        )
    covered = set()
    for dg in dgens:
        covered.update(A.above[dg])
    if covered != set(range(A.size)):
        raise InternalConsistencyError(
            "carrier is not the union of the up-intervals over delta'd generators"
        )
    return mins


def upset_Nk(F: FreeAlgebra, k: int) -> tuple[int, ...]:
    """The principal up-set above delta(g_1 v ... v g_k).

    Verified to be a subuniverse whose least element is that join's delta.
    """
    if not (1 <= k <= F.m):
        raise AlgebraError(f"k must be in 1..{F.m}")
    A = F.algebra
    gstar = F.generators[0]
    for g in F.generators[1:k]:
        gstar = A.join(gstar, g)
    dg = A.delta[gstar]
    members = A.above[dg]
    mset = set(members)
    for x in members:
        if A.delta[x] not in mset:
            raise InternalConsistencyError("up-set not closed under delta")
        for y in members:
            if A.imp[x][y] not in mset:
                raise InternalConsistencyError("up-set not closed under ->")
    if any(not A.leq(dg, x) for x in members) or dg not in mset:
        raise InternalConsistencyError("least element missing from up-set")
    return members


def epi_count_oracle(A, B: FiniteAlgebra) -> int:
    """Number of surjective homomorphisms, by brute-force search."""
    if isinstance(A, FreeAlgebra):
        A = A.algebra
    return len(epimorphisms(A, B))


def beta_oracle(n: int, m: int, k: int, i: int, free: FreeAlgebra | None = None) -> int:
    """Count maximal implicative filters of N_k whose quotient is the
    i-element chain with delta.

    Every such filter is the kernel of an epimorphism onto that chain (the
    quotient by a maximal filter is simple, and the chains are rigid), so
    the count equals the epimorphism count; kernels are checked distinct.
    """
    if free is None:
        free = build_free(n, m)
    if not (2 <= i <= n):
        raise AlgebraError(f"i must be in 2..{n}")
    nk = upset_Nk(free, k)
    sub, _ = restrict_to(free.algebra, nk, label=f"N_{k}")
    target = make_chain(i, with_delta=True)
    epis = epimorphisms(sub, target)
    kernels = {
        frozenset(x for x in range(sub.size) if h[x] == target.top)
        for h in epis
    }
    if len(kernels) != len(epis):
        raise InternalConsistencyError("distinct epis share a kernel")
    return len(epis)
