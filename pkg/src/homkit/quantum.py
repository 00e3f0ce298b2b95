"""Quantum graphs: formal rational linear combinations of graphs.

Covers the partition-lattice Möbius function, the four basis changes
between hom/emb/strong-emb functionals, the subgraph-to-hom quantum
graph over spasms, colorability restriction, exact evaluation, and
constituent extraction from oracle access via tensor-product probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Iterable, Iterator, Optional

from .canon import canonical_form
from .counting import MapKind, count_maps
from .errors import BudgetExceeded, RankDeficiencyTimeout, UnsupportedSpeciesPair
from .graphs import Graph, SetPartition, quotient, spasm_partitions, tensor_product

Species = str  # "hom" | "emb" | "stremb"

SPECIES = ("hom", "emb", "stremb")


def partition_mobius(rho: SetPartition) -> Fraction:
    """Möbius value mu(bottom, rho) on the partition lattice:
    product over blocks B of (-1)^(|B|-1) * (|B|-1)!."""
    value = 1
    for b in rho.blocks:
        k = len(b) - 1
        value *= (-1) ** k * factorial(k)
    return Fraction(value)


@dataclass(frozen=True)
class QuantumGraph:
    """Finite formal linear combination of loop-free simple graphs.

    Terms are keyed by canonical form; zero coefficients are never stored.
    """

    terms: tuple[tuple[bytes, Graph, Fraction], ...]

    @staticmethod
    def from_terms(pairs: Iterable[tuple[Graph, Fraction | int]]) -> "QuantumGraph":
        acc: dict[bytes, tuple[Graph, Fraction]] = {}
        for g, coeff in pairs:
            if not g.is_simple:
                raise ValueError("quantum graph constituents must be loop-free")
            coeff = Fraction(coeff)
            key = canonical_form(g)
            if key in acc:
                acc[key] = (acc[key][0], acc[key][1] + coeff)
            else:
                acc[key] = (g, coeff)
        kept = sorted(
            ((k, g, c) for k, (g, c) in acc.items() if c != 0),
            key=lambda t: (t[1].vertex_count, t[1].edge_count, t[0]),
        )
        return QuantumGraph(tuple(kept))

    @staticmethod
    def zero() -> "QuantumGraph":
        return QuantumGraph(())

    @staticmethod
    def single(g: Graph, coeff: Fraction | int = 1) -> "QuantumGraph":
        return QuantumGraph.from_terms([(g, coeff)])

    def support(self) -> list[Graph]:
        return [g for _, g, _ in self.terms]

    def coefficient(self, g: Graph) -> Fraction:
        key = canonical_form(g)
        for k, _, c in self.terms:
            if k == key:
                return c
        return Fraction(0)

    def __add__(self, other: "QuantumGraph") -> "QuantumGraph":
        return QuantumGraph.from_terms(
            [(g, c) for _, g, c in self.terms] + [(g, c) for _, g, c in other.terms]
        )

    def scaled(self, factor: Fraction | int) -> "QuantumGraph":
        factor = Fraction(factor)
        return QuantumGraph.from_terms([(g, c * factor) for _, g, c in self.terms])

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuantumGraph):
            return NotImplemented
        return [(k, c) for k, _, c in self.terms] == [(k, c) for k, _, c in other.terms]

    def __hash__(self):
        return hash(tuple((k, c) for k, _, c in self.terms))


def _edge_supersets(g: Graph) -> Iterator[Graph]:
    """All graphs obtained from g by adding edges on the same vertex set."""
    missing = [
        (u, v)
        for u, v in combinations(range(g.vertex_count), 2)
        if not g.has_edge(u, v)
    ]
    for r in range(len(missing) + 1):
        for extra in combinations(missing, r):
            yield g.with_extra_edges(extra)


def basis_transform(q: QuantumGraph, source: Species, target: Species) -> QuantumGraph:
    """Rewrite a quantum functional between adjacent species bases.

    hom->emb:      #Hom(H,.)    = sum over spasm partitions of #Emb(H/rho, .)
    emb->hom:      #Emb(H,.)    = sum of mu(bottom,rho) * #Hom(H/rho, .)
    emb->stremb:   #Emb(H,.)    = sum over edge supersets of #StrEmb(H', .)
    stremb->emb:   #StrEmb(H,.) = sum of (-1)^(|E'|-|E|) * #Emb(H', .)
    """
    if source not in SPECIES or target not in SPECIES:
        raise UnsupportedSpeciesPair(f"unknown species {source!r} -> {target!r}")
    out: list[tuple[Graph, Fraction]] = []
    if (source, target) == ("hom", "emb"):
        for _, h, coeff in q.terms:
            for rho in spasm_partitions(h):
                out.append((quotient(h, rho), coeff))
    elif (source, target) == ("emb", "hom"):
        for _, h, coeff in q.terms:
            for rho in spasm_partitions(h):
                out.append((quotient(h, rho), coeff * partition_mobius(rho)))
    elif (source, target) == ("emb", "stremb"):
        for _, h, coeff in q.terms:
            for sup in _edge_supersets(h):
                out.append((sup, coeff))
    elif (source, target) == ("stremb", "emb"):
        for _, h, coeff in q.terms:
            for sup in _edge_supersets(h):
                sign = (-1) ** (sup.edge_count - h.edge_count)
                out.append((sup, coeff * sign))
    else:
        raise UnsupportedSpeciesPair(
            f"{source!r} -> {target!r} is not an adjacent species pair"
        )
    return QuantumGraph.from_terms(out)


def sub_to_hom_quantum(h: Graph, budget: int = 8) -> QuantumGraph:
    """Quantum graph Q with #Hom(Q, G) = #Sub(h, G) for every G.

    Construction: #Sub = #Emb / #Aut, then the emb->hom basis change;
    the support is exactly the spasm set of h.
    """
    if not h.is_simple:
        raise ValueError("pattern must be simple")
    if h.vertex_count > budget:
        raise BudgetExceeded(f"partition enumeration over {h.vertex_count} > {budget}")
    auts = count_maps(MapKind.AUT, h, h, budget=max(budget, h.vertex_count))
    emb_basis = QuantumGraph.single(h, Fraction(1, auts))
    return basis_transform(emb_basis, "emb", "hom")


def evaluate_quantum(
    q: QuantumGraph,
    g: Graph,
    backend: Callable[[Graph, Graph], int],
) -> Fraction:
    """Sum of coefficient * backend(constituent, g), exact."""
    total = Fraction(0)
    for _, h, coeff in q.terms:
        total += coeff * backend(h, g)
    return total


def evaluate_quantum_int(
    q: QuantumGraph, g: Graph, backend: Callable[[Graph, Graph], int]
) -> int:
    """Evaluation asserting the result is an integer (final counts)."""
    val = evaluate_quantum(q, g, backend)
    if val.denominator != 1:
        raise AssertionError(f"expected integral evaluation, got {val}")
    return int(val)


def restrict_colorable(
    q: QuantumGraph, f: Graph, budget: Optional[int] = None
) -> QuantumGraph:
    """Drop constituents that admit no homomorphism into f."""
    kept = []
    for _, h, coeff in q.terms:
        if count_maps(MapKind.HOM, h, f, budget=budget) > 0:
            kept.append((h, coeff))
    return QuantumGraph.from_terms(kept)


def _enumerate_test_graphs(limit: int) -> Iterator[Graph]:
    """Simple graphs in canonical size order: by vertex count, then edge
    count, then canonical form; deduplicated up to isomorphism."""
    produced = 0
    n = 1
    while True:
        batch: dict[bytes, Graph] = {}
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.build(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            key = canonical_form(g)
            if key not in batch:
                batch[key] = g
        for key in sorted(batch, key=lambda k: (batch[k].edge_count, k)):
            yield batch[key]
            produced += 1
            if produced >= limit:
                return
        n += 1


@dataclass(frozen=True)
class ExtractionResult:
    values: tuple[tuple[Graph, int], ...]  # aligned with the quantum graph's terms
    queried: tuple[Graph, ...]  # every tensor product sent to the oracle
    max_query_vertices: int

    def value_of(self, h: Graph) -> int:
        key = canonical_form(h)
        for g, v in self.values:
            if canonical_form(g) == key:
                return v
        raise KeyError("not a constituent")


def extract_constituents(
    q: QuantumGraph,
    g: Graph,
    oracle: Callable[[Graph], int],
    f_constraint: Optional[Graph] = None,
    test_graph_budget: int = 128,
) -> ExtractionResult:
    """Recover #Hom(H, g) for every constituent H from oracle access to
    the quantum hom count.

    The oracle answers #Hom(q, g x A) for probe graphs A enumerated in
    canonical size order; probes extend until the coefficient matrix
    [#Hom(H_j, A_i)] reaches full column rank, then the system is solved
    exactly over the rationals.  When ``f_constraint`` is given the target
    g must be f-colorable, which keeps every queried product f-colorable.
    """
    constituents = q.support()
    coeffs = [c for _, _, c in q.terms]
    t = len(constituents)
    if t == 0:
        return ExtractionResult((), (), 0)
    if f_constraint is not None:
        if count_maps(MapKind.HOM, g, f_constraint, budget=g.vertex_count) == 0:
            raise ValueError("target is not colorable into the constraint graph")
    hom_budget = max(h.vertex_count for h in constituents)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    queried: list[Graph] = []
    rank = 0
    for probe in _enumerate_test_graphs(test_graph_budget):
        row = [
            Fraction(count_maps(MapKind.HOM, h, probe, budget=hom_budget))
            for h in constituents
        ]
        if not _extends_rank(rows, row):
            continue
        product = tensor_product(g, probe)
        queried.append(product)
        rows.append(row)
        rhs.append(Fraction(oracle(product)))
        rank += 1
        if rank == t:
            break
    else:
        raise RankDeficiencyTimeout(
            f"rank {rank} < {t} after {test_graph_budget} probe graphs"
        )
    solution = _solve_exact(rows, rhs)
    values = []
    for h, lam, c in zip(constituents, coeffs, solution):
        hom_count = c / lam
        if hom_count.denominator != 1:
            raise AssertionError("extracted hom count is not integral")
        values.append((h, int(hom_count)))
    max_q = max(p.vertex_count for p in queried)
    return ExtractionResult(tuple(values), tuple(queried), max_q)


def _extends_rank(rows: list[list[Fraction]], candidate: list[Fraction]) -> bool:
    work = [list(r) for r in rows] + [list(candidate)]
    return _rank(work) > _rank([list(r) for r in rows])


def _rank(mat: list[list[Fraction]]) -> int:
    if not mat:
        return 0
    mat = [row[:] for row in mat]
    n_rows, n_cols = len(mat), len(mat[0])
    rank = 0
    col = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for r in range(n_rows):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / pv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a full-column-rank square-ish system by Gaussian elimination."""
    n = len(rows)
    t = len(rows[0])
    aug = [rows[i][:] + [rhs[i]] for i in range(n)]
    pivots = []
    r = 0
    for c in range(t):
        pivot = None
        for i in range(r, n):
            if aug[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            raise AssertionError("system lost rank during elimination")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [a / pv for a in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    solution = [Fraction(0)] * t
    for i, c in enumerate(pivots):
        solution[c] = aug[i][t]
    return solution
