"""Projected-coloring graphs: structure rules, Hardy matrices, colorability.

A projected-coloring graph (PCG) is a connected signed hypergraph on
vertices 1..n whose edges form an antichain under inclusion.  Each edge
carries a sign theta in {+1, -1} (drawn red for +1, green for -1).  The
coloring game assigns C(v) in {+1 (green), -1 (red)} to each vertex and
asks that prod_{v in S} C(v) = -theta_S for every edge S.

Bit convention used throughout: b_v = (1 - C(v)) / 2, so green is 0 and
red is 1, and the game becomes the parity system A.b = Theta over GF(2),
where A is the edge/vertex incidence matrix and Theta_i = 1 iff
theta_i = +1.  Column j of A is vertex j+1; assignment integers place
vertex 1 in the least significant bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PcgValidationError, ResourceLimitError
from .gf2 import Gf2Matrix, Gf2Vector, rank, solve

DEFAULT_CENSUS_CAP = 24


@dataclass(frozen=True)
class SignedEdge:
    """Edge vertex set (sorted, 1-based) with sign theta in {+1, -1}."""

    vertices: tuple[int, ...]
    theta: int

    def __post_init__(self):
        verts = tuple(sorted(self.vertices))
        if not verts:
            raise ValueError("edge must contain at least one vertex")
        if len(set(verts)) != len(verts):
            raise ValueError(f"edge {verts} repeats a vertex")
        if any(v < 1 for v in verts):
            raise ValueError(f"edge {verts} has a vertex below 1")
        if self.theta not in (+1, -1):
            raise ValueError(f"theta must be +1 or -1, got {self.theta}")
        object.__setattr__(self, "vertices", verts)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << (v - 1)
        return m

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def theta_bit(self) -> int:
        """1 iff theta = +1, i.e. (theta + |theta|) / 2."""
        return 1 if self.theta == 1 else 0


def edge(vertices: Iterable[int], theta: int = 1) -> SignedEdge:
    return SignedEdge(tuple(vertices), theta)


@dataclass(frozen=True)
class PCG:
    """Signed hypergraph on vertices 1..n with an ordered edge list.

    Construction only enforces well-formedness (vertex ranges, edge
    shape).  The domain rules (edge sizes, antichain, connectivity) are
    checked by :func:`validate`, which reports violations as data.
    """

    n: int
    edges: tuple[SignedEdge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("vertex count must be at least 1")
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if e.vertices[-1] > self.n:
                raise ValueError(f"edge {e.vertices} exceeds vertex count {self.n}")

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[Sequence[int], int]]) -> "PCG":
        return cls(n, tuple(SignedEdge(tuple(vs), t) for vs, t in edges))

    @property
    def p(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Violation:
    kind: str  # "edge-size" | "nested-edges" | "disconnected"
    message: str
    edges: tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Coloring:
    """Per-vertex color values, +1 for green and -1 for red."""

    values: tuple[int, ...]

    def __post_init__(self):
        if any(v not in (+1, -1) for v in self.values):
            raise ValueError("coloring values must be +1 or -1")

    @classmethod
    def from_bits(cls, bits: int, n: int) -> "Coloring":
        return cls(tuple(1 - 2 * ((bits >> i) & 1) for i in range(n)))

    @property
    def bits(self) -> int:
        out = 0
        for i, v in enumerate(self.values):
            out |= (0 if v == 1 else 1) << i
        return out

    def satisfies(self, pcg: PCG) -> bool:
        b = self.bits
        return all((b & e.mask).bit_count() & 1 == e.theta_bit for e in pcg.edges)


@dataclass(frozen=True)
class ColorabilityResult:
    colorable: bool
    rank_a: int
    rank_b: int
    witness: Coloring | None


@dataclass(frozen=True)
class ColoringCensus:
    total: int
    satisfying: int
    first_witness: Coloring | None


@dataclass(frozen=True)
class IrreducibilityResult:
    status: str  # "irreducible" | "reducible" | "not_applicable"
    witness: tuple[SignedEdge, ...] | None = None


def validate(pcg: PCG) -> ValidationReport:
    """Check the domain rules; violations are returned, never raised."""
    violations: list[Violation] = []
    for i, e in enumerate(pcg.edges):
        if not 1 <= e.size < pcg.n:
            violations.append(Violation(
                "edge-size",
                f"edge #{i} {set(e.vertices)} has size {e.size}, need 1 <= size < {pcg.n}",
                (i,),
            ))
    for i in range(pcg.p):
        for j in range(pcg.p):
            if i != j:
                mi, mj = pcg.edges[i].mask, pcg.edges[j].mask
                # mi subset of mj; duplicate vertex sets are reported once
                if mi | mj == mj and (i < j or mi != mj):
                    violations.append(Violation(
                        "nested-edges",
                        f"edge #{i} {set(pcg.edges[i].vertices)} is contained in "
                        f"edge #{j} {set(pcg.edges[j].vertices)}",
                        (i, j),
                    ))
    # Connected with no isolated sub-structures: every vertex covered and
    # the edge hypergraph forms a single component.
    parent = list(range(pcg.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    covered = set()
    for e in pcg.edges:
        covered.update(e.vertices)
        root = find(e.vertices[0])
        for v in e.vertices[1:]:
            parent[find(v)] = root
    uncovered = sorted(set(range(1, pcg.n + 1)) - covered)
    if uncovered:
        violations.append(Violation(
            "disconnected",
            f"vertices {uncovered} belong to no edge",
        ))
    roots = {find(v) for v in covered}
    if len(roots) > 1:
        components = {}
        for v in sorted(covered):
            components.setdefault(find(v), []).append(v)
        parts = sorted(components.values())
        violations.append(Violation(
            "disconnected",
            f"edge hypergraph splits into components {parts}",
        ))
    return ValidationReport(tuple(violations))


def require_valid(pcg: PCG) -> None:
    report = validate(pcg)
    if not report.ok:
        raise PcgValidationError(report)


def hardy_matrices(pcg: PCG) -> tuple[Gf2Matrix, Gf2Vector]:
    """Incidence matrix A (p x n) and sign vector Theta of the parity system."""
    a = Gf2Matrix.from_bitmasks((e.mask for e in pcg.edges), pcg.n)
    theta = Gf2Vector.from_bits([e.theta_bit for e in pcg.edges])
    return a, theta


def is_colorable(pcg: PCG) -> ColorabilityResult:
    """Decide the coloring game by the GF(2) rank criterion.

    The graph is colorable iff rank(A) == rank([A | Theta]).  The witness
    is the solution with all free variables green, so repeated calls
    return the identical coloring.
    """
    a, theta = hardy_matrices(pcg)
    rank_a = rank(a)
    rank_b = rank(a.augment_column(theta))
    if rank_a != rank_b:
        return ColorabilityResult(False, rank_a, rank_b, None)
    solution = solve(a, theta)
    assert solution is not None  # equal ranks guarantee consistency
    return ColorabilityResult(True, rank_a, rank_b, Coloring.from_bits(solution.bits, pcg.n))


def _variable_table(v_idx: int, n: int) -> int:
    """Truth table of bit v over all 2^n assignments, packed into one int.

    Bit b of the result is the value of bit ``v_idx`` in assignment b.
    Built by doubling, so cost is O(n) big-int operations.
    """
    width = 1 << (v_idx + 1)
    table = ((1 << (1 << v_idx)) - 1) << (1 << v_idx)
    total = 1 << n
    while width < total:
        table |= table << width
        width <<= 1
    return table


def brute_force_colorings(pcg: PCG, cap: int = DEFAULT_CENSUS_CAP) -> ColoringCensus:
    """Exhaustive census of all 2^n colorings against every edge constraint.

    Enumeration is the plain binary counter with vertex 1 least
    significant.  Internally each edge's satisfaction over all
    assignments is materialised as a 2^n-bit truth table so the census
    runs at machine speed, but it remains a full enumeration,
    independent of the rank criterion.
    """
    if pcg.n > cap:
        raise ResourceLimitError(f"census over 2^{pcg.n} assignments exceeds cap {cap}")
    total = 1 << pcg.n
    acc = (1 << total) - 1
    for e in pcg.edges:
        parity = 0
        for v in e.vertices:
            parity ^= _variable_table(v - 1, pcg.n)
        satisfied = parity if e.theta_bit == 1 else ~parity & ((1 << total) - 1)
        acc &= satisfied
        if not acc:
            break
    satisfying = acc.bit_count()
    witness = None
    if acc:
        first = (acc & -acc).bit_length() - 1
        witness = Coloring.from_bits(first, pcg.n)
    return ColoringCensus(total, satisfying, witness)


def _colorable_subset(pcg: PCG, keep: Sequence[int]) -> bool:
    masks = [pcg.edges[i].mask for i in keep]
    bits = [pcg.edges[i].theta_bit for i in keep]
    a = Gf2Matrix.from_bitmasks(masks, pcg.n)
    theta = Gf2Vector(len(keep), sum(b << i for i, b in enumerate(bits)))
    return rank(a) == rank(a.augment_column(theta))


def is_irreducible(pcg: PCG) -> IrreducibilityResult:
    """Classify an un-colorable graph as irreducible or reducible.

    Irreducible means no proper sub-list of edges is already
    un-colorable and every vertex is constrained by some edge.  Checking
    single-edge deletions suffices: dropping constraints only enlarges
    the solution set.  The reducible witness is a minimal un-colorable
    edge subset found by greedy deletion, so it is deterministic.
    """
    if is_colorable(pcg).colorable:
        return IrreducibilityResult("not_applicable")
    all_idx = list(range(pcg.p))
    deletions_colorable = all(
        _colorable_subset(pcg, all_idx[:i] + all_idx[i + 1:]) for i in all_idx
    )
    covered = set()
    for e in pcg.edges:
        covered.update(e.vertices)
    if deletions_colorable and len(covered) == pcg.n:
        return IrreducibilityResult("irreducible")
    keep = list(all_idx)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if not _colorable_subset(pcg, trial):
            keep = trial
        else:
            i += 1
    witness = tuple(pcg.edges[i] for i in keep)
    return IrreducibilityResult("reducible", witness)


def from_adjacency_map(regions: int, adjacency: Iterable[tuple[int, int]]) -> PCG:
    """PCG for a map-coloring instance: one red pair edge per border.

    Each adjacent pair of regions must end up with different colors,
    which is exactly a theta = +1 constraint on the pair.
    """
    pairs = []
    seen = set()
    for a, b in adjacency:
        if a == b:
            raise ValueError(f"region {a} cannot border itself")
        if not (1 <= a <= regions and 1 <= b <= regions):
            raise ValueError(f"border ({a},{b}) outside regions 1..{regions}")
        key = (min(a, b), max(a, b))
        if key not in seen:
            seen.add(key)
            pairs.append(key)
    pcg = PCG(regions, tuple(SignedEdge(pair, +1) for pair in sorted(pairs)))
    require_valid(pcg)
    return pcg
