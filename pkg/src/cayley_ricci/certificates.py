"""Hand-checkable optimality certificates for each graph family.

Every certificate pairs one representative edge with a transport plan
whose moves are spelled out explicitly (mass coefficients are affine in
the idleness alpha) and a claimed curvature.  The plan upper-bounds W1 by
its cost; an integral 1-Lipschitz potential of equal value (shipped
alongside, in data/certificates/) lower-bounds it; together they pin
W1 = 1 - kappa * (1 - alpha) on the edge with no solver in the loop.

Plans list only the moving mass, as the derivations do; whatever a vertex
does not ship stays put, and the builder fills that diagonal in before
the marginals are checked.

File format (plain text, "#" comments):

    edge <x> <y>
    <src> <dst> <num/den>     one line per plan entry, or
    <vertex> <value>          one line per potential entry
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cayley import CayleyGraph, build_cayley, parse_gens
from .groups import element_label, parse_element, parse_group
from .transport import ONE, ProbMeasure, TransportPlan, format_rational, mu_alpha, parse_rational

F = Fraction

Affine = tuple[Fraction, Fraction]  # (a, b) stands for a*alpha + b

IDLE: Affine = (F(1), F(0))  # the whole idle mass, alpha


def idle_less(q) -> Affine:
    """alpha - q*(1-alpha): idle mass net of what the target already holds."""
    q = F(q)
    return (1 + q, -q)


def spread(q) -> Affine:
    """q*(1-alpha): one neighbor's share (q = 1/degree)."""
    q = F(q)
    return (-q, q)


def evaluate(mass: Affine, alpha: Fraction) -> Fraction:
    return mass[0] * alpha + mass[1]


@dataclass(frozen=True)
class Certificate:
    """A representative edge, its transport moves, and the claimed kappa."""

    name: str
    group: str
    gens: str
    edge: tuple[str, str]
    moves: tuple[tuple[str, str, Affine], ...]
    kappa: Fraction

    def claimed_w1(self, alpha) -> Fraction:
        """The cost the moves add up to: W1 = 1 - kappa * (1 - alpha)."""
        return ONE - self.kappa * (ONE - F(alpha))

    def graph(self) -> CayleyGraph:
        spec = parse_group(self.group)
        return build_cayley(spec, parse_gens(spec, self.gens))


def plan_at(cert: Certificate, graph: CayleyGraph, alpha) -> TransportPlan:
    """Evaluate the moves at alpha and park the unmoved mass in place."""
    alpha = F(alpha)
    spec = graph.spec
    x = graph.vertex(parse_element(spec, cert.edge[0]))
    mu = mu_alpha(graph, x, alpha)
    entries: dict[tuple[int, int], Fraction] = {}
    shipped: dict[int, Fraction] = {}
    for src, dst, mass in cert.moves:
        u = graph.vertex(parse_element(spec, src))
        v = graph.vertex(parse_element(spec, dst))
        q = evaluate(mass, alpha)
        if q < 0:
            raise ValueError(f"{cert.name}: move {src} -> {dst} has negative mass at alpha = {alpha}")
        entries[(u, v)] = entries.get((u, v), F(0)) + q
        shipped[u] = shipped.get(u, F(0)) + q
    for v, held in mu.masses.items():
        stay = held - shipped.get(v, F(0))
        if stay < 0:
            raise ValueError(f"{cert.name}: vertex {v} ships more than it holds at alpha = {alpha}")
        if stay > 0:
            entries[(v, v)] = entries.get((v, v), F(0)) + stay
    return TransportPlan(entries)


def measures_at(cert: Certificate, graph: CayleyGraph, alpha) -> tuple[ProbMeasure, ProbMeasure]:
    spec = graph.spec
    x = graph.vertex(parse_element(spec, cert.edge[0]))
    y = graph.vertex(parse_element(spec, cert.edge[1]))
    return mu_alpha(graph, x, alpha), mu_alpha(graph, y, alpha)


def _dihedral(name: str, n: int, kind: str) -> Certificate:
    """Plans for D_n with S = {s, s^-1, t}: three moves cover everything.

    Type A at n = 3, 4, 5 keeps mass idle and shuttles the tau-side (and,
    from n = 4 up, part of the far rotation); from n = 6 the idle mass
    itself has to travel, which is what kills the curvature.  Type B is
    the same shape at every n: shift each rotation's share to its mirror.
    """
    a = F(1, 3)
    sN = f"s{n - 1}"
    if kind == "A":
        if n == 3:
            moves = (("e", "s", idle_less(a)), ("t", "st", spread(a)))
            kappa = F(1)
        elif n == 4:
            moves = (("e", "s", idle_less(a)), ("s3", "s2", spread(a)), ("t", "st", spread(a)))
            kappa = F(2, 3)
        elif n == 5:
            # s4 -> s2 rides two sigma-steps, hence the 1/3 curvature
            moves = (("e", "s", idle_less(a)), ("t", "st", spread(a)), ("s4", "s2", spread(a)))
            kappa = F(1, 3)
        else:
            moves = (
                (sN, "e", spread(a)),
                ("e", "s", IDLE),
                ("s", "s2", spread(a)),
                ("t", "st", spread(a)),
            )
            kappa = F(0)
    else:
        moves = (("e", "t", idle_less(a)), ("s", "st", spread(a)), (sN, f"{sN}t", spread(a)))
        kappa = F(2, 3)
    return Certificate(name, f"D:{n}", "sigma-tau", ("e", "s") if kind == "A" else ("e", "t"), moves, kappa)


def _quaternion(name: str, m: int, kind: str) -> Certificate:
    """Plans for Q_4m with S = {s, s^-1, t, t^-1}; t^-1 = s^m t."""
    b = F(1, 4)
    period = 2 * m
    sN = f"s{period - 1}"
    if kind == "A":
        if m == 2:
            moves = (
                ("e", "s", idle_less(b)),
                ("s3", "s2", spread(b)),
                ("t", "st", spread(b)),
                ("s2t", "s3t", spread(b)),
            )
            kappa = F(1, 2)
        elif m == 3:
            # s5 -> s2 travels two edges (through s5t), so kappa drops to 1/4
            moves = (
                ("e", "s", idle_less(b)),
                ("t", "st", spread(b)),
                ("s3t", "s4t", spread(b)),
                ("s5", "s2", spread(b)),
            )
            kappa = F(1, 4)
        else:
            moves = (
                (sN, "e", spread(b)),
                ("e", "s", IDLE),
                ("s", "s2", spread(b)),
                ("t", "st", spread(b)),
                (f"s{m}t", f"s{m + 1}t", spread(b)),
            )
            kappa = F(0)
        return Certificate(name, f"Q:{4 * m}", "sigma-tau", ("e", "s"), moves, kappa)
    moves = (
        ("e", "t", idle_less(b)),
        ("s", "st", spread(b)),
        (sN, f"{sN}t", spread(b)),
        (f"s{m}t", f"s{m}", spread(b)),
    )
    return Certificate(name, f"Q:{4 * m}", "sigma-tau", ("e", "t"), moves, F(1, 2))


def _cyclic(name: str, n: int, k: int, kind: str, kappa: Fraction) -> Certificate:
    """Plans for Z/nZ with S = {+-1, +-k} in the large-n regimes."""
    b = F(1, 4)

    def lab(i: int) -> str:
        return str(i % n)

    if kind == "A":
        if kappa == 0:
            # every share shifts one step along its own generator orbit
            moves = (
                (lab(-k), lab(-k + 1), spread(b)),
                (lab(k), lab(k + 1), spread(b)),
                (lab(-1), lab(0), spread(b)),
                (lab(0), lab(1), IDLE),
                (lab(1), lab(2), spread(b)),
            )
        elif k == 2:
            moves = ((lab(-2), lab(0), spread(b)), (lab(0), lab(1), IDLE), (lab(1), lab(3), spread(b)))
        elif k == 3:
            moves = (
                (lab(0), lab(1), idle_less(b)),
                (lab(-1), lab(2), spread(b)),
                (lab(-3), lab(-2), spread(b)),
                (lab(3), lab(4), spread(b)),
            )
        else:
            # k >= 4: the -1 share detours two edges, +-k shares shift by one
            moves = (
                (lab(0), lab(1), idle_less(b)),
                (lab(-k), lab(-k + 1), spread(b)),
                (lab(k), lab(k + 1), spread(b)),
                (lab(-1), lab(2), spread(b)),
            )
        edge = (lab(0), lab(1))
    else:
        # type B edge (0, k): parallel +-1 shares shift by one k-edge; the
        # -k share crosses three edges, tight exactly in the flat regime
        moves = (
            (lab(0), lab(k), idle_less(b)),
            (lab(-1), lab(k - 1), spread(b)),
            (lab(1), lab(k + 1), spread(b)),
            (lab(-k), lab(2 * k), spread(b)),
        )
        edge = (lab(0), lab(k))
    return Certificate(name, f"Z:{n}", f"s1k:{k}", edge, moves, kappa)


FAMILY_CERTIFICATES: tuple[Certificate, ...] = (
    _dihedral("d3_typeA", 3, "A"),
    _dihedral("d3_typeB", 3, "B"),
    _dihedral("d4_typeA", 4, "A"),
    _dihedral("d5_typeA", 5, "A"),
    _dihedral("d5_typeB", 5, "B"),
    _dihedral("d6_typeA", 6, "A"),
    _dihedral("d6_typeB", 6, "B"),
    _dihedral("d8_typeA", 8, "A"),
    _dihedral("d8_typeB", 8, "B"),
    _quaternion("q8_typeA", 2, "A"),
    _quaternion("q8_typeB", 2, "B"),
    _quaternion("q12_typeA", 3, "A"),
    _quaternion("q12_typeB", 3, "B"),
    _quaternion("q16_typeA", 4, "A"),
    _quaternion("q16_typeB", 4, "B"),
    _cyclic("cyc11_k2_typeA", 11, 2, "A", F(1, 2)),
    _cyclic("cyc11_k2_typeB", 11, 2, "B", F(0)),
    _cyclic("cyc16_k3_typeA", 16, 3, "A", F(1, 2)),
    _cyclic("cyc16_k3_typeB", 16, 3, "B", F(0)),
    _cyclic("cyc23_k4_typeA", 23, 4, "A", F(1, 4)),
    _cyclic("cyc23_k4_typeB", 23, 4, "B", F(0)),
    _cyclic("cyc18_k5_typeA", 18, 5, "A", F(0)),
    _cyclic("cyc18_k5_typeB", 18, 5, "B", F(0)),
    _cyclic("cyc20_k3_typeB", 20, 3, "B", F(0)),
)


def certificate_by_name(name: str) -> Certificate:
    for cert in FAMILY_CERTIFICATES:
        if cert.name == name:
            return cert
    raise KeyError(f"no certificate named {name!r}")


def format_plan_file(cert: Certificate, graph: CayleyGraph, alpha, header: str = "") -> str:
    alpha = F(alpha)
    plan = plan_at(cert, graph, alpha)
    spec = graph.spec
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
    lines.append(f"edge {cert.edge[0]} {cert.edge[1]}")
    for (u, v), q in sorted(plan.entries.items()):
        lines.append(f"{element_label(spec, graph.vertices[u])} {element_label(spec, graph.vertices[v])} {format_rational(q)}")
    return "\n".join(lines) + "\n"


def format_potential_file(cert: Certificate, graph: CayleyGraph, f: dict[int, int], header: str = "") -> str:
    spec = graph.spec
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
    lines.append(f"edge {cert.edge[0]} {cert.edge[1]}")
    for v in sorted(f):
        lines.append(f"{element_label(spec, graph.vertices[v])} {f[v]}")
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def parse_plan_file(text: str, graph: CayleyGraph) -> tuple[tuple[int, int], TransportPlan]:
    """Read an edge header plus "src dst num/den" lines into a plan."""
    rows = _content_lines(text)
    if not rows or rows[0][0] != "edge" or len(rows[0]) != 3:
        raise ValueError("plan file must start with a line 'edge <x> <y>'")
    spec = graph.spec
    x = graph.vertex(parse_element(spec, rows[0][1]))
    y = graph.vertex(parse_element(spec, rows[0][2]))
    entries: dict[tuple[int, int], Fraction] = {}
    for row in rows[1:]:
        if len(row) != 3:
            raise ValueError(f"bad plan line: {' '.join(row)!r}")
        u = graph.vertex(parse_element(spec, row[0]))
        v = graph.vertex(parse_element(spec, row[1]))
        entries[(u, v)] = entries.get((u, v), F(0)) + parse_rational(row[2])
    return (x, y), TransportPlan(entries)


def parse_potential_file(text: str, graph: CayleyGraph) -> tuple[tuple[int, int] | None, dict[int, int]]:
    """Read "vertex value" lines; an edge header is allowed and returned."""
    rows = _content_lines(text)
    edge = None
    start = 0
    if rows and rows[0][0] == "edge":
        if len(rows[0]) != 3:
            raise ValueError("bad edge header in potential file")
        spec = graph.spec
        edge = (
            graph.vertex(parse_element(spec, rows[0][1])),
            graph.vertex(parse_element(spec, rows[0][2])),
        )
        start = 1
    f: dict[int, int] = {}
    for row in rows[start:]:
        if len(row) != 2:
            raise ValueError(f"bad potential line: {' '.join(row)!r}")
        v = graph.vertex(parse_element(graph.spec, row[0]))
        f[v] = int(row[1])
    return edge, f
