"""Cayley graphs over symmetric, identity-free generating sets.

Generators are split into two classes: type A is the rotation class
(sigma and sigma^-1 for dihedral/quaternion groups, the residues +-1 for
cyclic groups) and type B is the other class (tau-side generators, or the
residues +-k).  An undirected edge inherits the classes of every generator
that realizes it, so an edge can be A, B, or AB when the classes collide
(k = +-1 mod n).  When n = 2k the residue +k is its own inverse and the
generating set simply deduplicates, dropping the vertex degree to 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .groups import CYCLIC, GroupElement, GroupSpec, elements, identity, inverse, mul

TYPE_A = "A"
TYPE_B = "B"
TYPE_AB = "AB"


class NonSymmetricSetError(ValueError):
    """A generator's inverse is missing from the set."""


class ContainsIdentityError(ValueError):
    """The identity element was offered as a generator."""


class NotGeneratingError(ValueError):
    """The set does not generate the group (the graph would be disconnected)."""


class NotAnEdgeError(ValueError):
    """The requested vertex pair is not an edge of the graph."""


@dataclass(frozen=True)
class GeneratorSet:
    """Symmetric identity-free generating set with its A/B class split."""

    type_a: tuple[GroupElement, ...]
    type_b: tuple[GroupElement, ...]

    @property
    def all(self) -> tuple[GroupElement, ...]:
        seen = list(self.type_a)
        for g in self.type_b:
            if g not in seen:
                seen.append(g)
        return tuple(seen)


def validate_symmetric(spec: GroupSpec, gens: list[GroupElement]) -> GeneratorSet:
    """Deduplicate, check symmetry/identity-freeness, and split into classes.

    For cyclic groups the residues +-1 land in type A and everything else in
    type B; for dihedral and quaternion groups sigma^+-1 are type A and the
    tau-side generators type B.
    """
    seen: list[GroupElement] = []
    for g in gens:
        if g == identity(spec):
            raise ContainsIdentityError(f"identity offered as a generator for {spec}")
        if g not in seen:
            seen.append(g)
    for g in seen:
        if inverse(spec, g) not in seen:
            raise NonSymmetricSetError(f"generator {g} lacks its inverse in the set for {spec}")
    period = spec.rot_period
    type_a = tuple(g for g in seen if g.j == 0 and g.i in (1 % period, (-1) % period))
    type_b = tuple(g for g in seen if g not in type_a)
    return GeneratorSet(type_a, type_b)


def sigma_tau_set(spec: GroupSpec) -> GeneratorSet:
    """S = {sigma, sigma^-1, tau, tau^-1} for dihedral and quaternion groups.

    Dihedral tau is an involution, so the set has three elements and the
    graph is 3-regular; quaternion tau^-1 = sigma^m tau keeps it 4-regular.
    """
    if spec.kind == CYCLIC:
        raise ValueError("sigma-tau generators need a dihedral or quaternion group")
    s = GroupElement(1, 0)
    t = GroupElement(0, 1)
    gens = [s, inverse(spec, s), t, inverse(spec, t)]
    return validate_symmetric(spec, gens)


def s1k_set(spec: GroupSpec, k: int) -> GeneratorSet:
    """S_{1,k} = {+-1, +-k} in Z/nZ; degenerates gracefully when classes meet.

    The +-k residues stay in type B even when k = +-1 mod n, so the collision
    shows up downstream as AB edges rather than silently vanishing; n = 2k
    merely deduplicates +k = -k inside the class.
    """
    if spec.kind != CYCLIC:
        raise ValueError("S_{1,k} generators need a cyclic group")
    n = spec.param
    if n < 3:
        raise ValueError(f"S_(1,k) needs n >= 3, got n = {n}")
    if k % n == 0:
        raise ContainsIdentityError(f"+-{k} is the identity mod {n}")
    type_a = _dedup([GroupElement(1 % n, 0), GroupElement((-1) % n, 0)])
    type_b = _dedup([GroupElement(k % n, 0), GroupElement((-k) % n, 0)])
    validate_symmetric(spec, list(type_a) + list(type_b))
    return GeneratorSet(type_a, type_b)


def _dedup(gens: list[GroupElement]) -> tuple[GroupElement, ...]:
    out: list[GroupElement] = []
    for g in gens:
        if g not in out:
            out.append(g)
    return tuple(out)


def s1_set(spec: GroupSpec) -> GeneratorSet:
    """S_1 = {+1, -1} in Z/nZ, the cycle graph C_n (K_n for n <= 3)."""
    if spec.kind != CYCLIC:
        raise ValueError("S_1 generators need a cyclic group")
    if spec.param < 2:
        raise ValueError(f"S_1 needs n >= 2, got n = {spec.param}")
    return validate_symmetric(spec, [GroupElement(1, 0), GroupElement(spec.param - 1, 0)])


def complete_set(spec: GroupSpec) -> GeneratorSet:
    """Every non-identity element: the complete graph K_|G|."""
    gens = [g for g in elements(spec) if g != identity(spec)]
    return validate_symmetric(spec, gens)


def parse_gens(spec: GroupSpec, text: str) -> GeneratorSet:
    """Parse "sigma-tau", "s1", "s1k:<k>", "complete", or "list:<r1>,<r2>,...".

    The list form is cyclic-only and gives residues; each must come with its
    negation, matching the symmetry requirement.
    """
    text = text.strip()
    if text == "sigma-tau":
        return sigma_tau_set(spec)
    if text == "s1":
        return s1_set(spec)
    if text == "complete":
        return complete_set(spec)
    if text.startswith("s1k:"):
        return s1k_set(spec, int(text[4:]))
    if text.startswith("list:"):
        if spec.kind != CYCLIC:
            raise ValueError("list generators are supported for cyclic groups only")
        residues = [int(part) for part in text[5:].split(",") if part.strip()]
        if not residues:
            raise ValueError("empty generator list")
        return validate_symmetric(spec, [GroupElement(r % spec.param, 0) for r in residues])
    raise ValueError(f"cannot parse generator descriptor {text!r}")


@dataclass(frozen=True)
class CayleyGraph:
    """Undirected Cayley graph with typed edges and a fixed vertex order."""

    spec: GroupSpec
    gens: GeneratorSet
    vertices: tuple[GroupElement, ...]
    index: dict[GroupElement, int] = field(repr=False)
    adj: tuple[tuple[int, ...], ...] = field(repr=False)
    edges: tuple[tuple[int, int, str], ...] = field(repr=False)
    _edge_types: dict[tuple[int, int], str] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def degree(self) -> int:
        return len(self.adj[0])

    def vertex(self, g: GroupElement) -> int:
        return self.index[g]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adj[u]


def build_cayley(spec: GroupSpec, gens: GeneratorSet) -> CayleyGraph:
    """Connect g to g*s for every generator s; edges collect generator types."""
    verts = tuple(elements(spec))
    index = {g: u for u, g in enumerate(verts)}
    all_gens = gens.all
    type_of: dict[tuple[int, int], set[str]] = {}
    adj_sets: list[list[int]] = [[] for _ in verts]
    for u, g in enumerate(verts):
        for s in all_gens:
            v = index[mul(spec, g, s)]
            key = (u, v) if u < v else (v, u)
            kinds = type_of.setdefault(key, set())
            if s in gens.type_a:
                kinds.add(TYPE_A)
            if s in gens.type_b:
                kinds.add(TYPE_B)
            if v not in adj_sets[u]:
                adj_sets[u].append(v)
    _check_connected(adj_sets, spec)
    edge_types = {key: TYPE_AB if len(kinds) == 2 else next(iter(kinds)) for key, kinds in type_of.items()}
    edges = tuple((u, v, edge_types[(u, v)]) for (u, v) in sorted(edge_types))
    adj = tuple(tuple(sorted(nbrs)) for nbrs in adj_sets)
    return CayleyGraph(spec, gens, verts, index, adj, edges, edge_types)


def _check_connected(adj_sets: list[list[int]], spec: GroupSpec) -> None:
    if not adj_sets:
        raise NotGeneratingError(f"empty vertex set for {spec}")
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj_sets[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    if len(seen) != len(adj_sets):
        raise NotGeneratingError(f"generators do not generate {spec}: graph is disconnected")


def edge_type(graph: CayleyGraph, u: int, v: int) -> str:
    key = (u, v) if u < v else (v, u)
    try:
        return graph._edge_types[key]
    except KeyError:
        raise NotAnEdgeError(f"({u}, {v}) is not an edge of the Cayley graph on {graph.spec}") from None
