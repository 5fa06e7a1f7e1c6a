"""Exact Wasserstein-1 distance between probability measures on a graph.

Everything is rational: masses are fractions.Fraction, costs are integer
graph distances, and the solver is a successive-shortest-path min-cost
flow over the (tiny) supports, so optimal values come back exact, with an
optimal plan on the primal side and an integral 1-Lipschitz potential on
the dual side.  A brute-force enumerator over integer potentials serves
as an independent oracle for cross-checks.

Rational wire format: "num/den" in lowest terms, denominator always
present ("0/1", "2/3").
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class AlphaOutOfRangeError(ValueError):
    """Idleness parameter outside [0, 1]."""


class UnbalancedMeasuresError(ValueError):
    """Total masses differ; transport between them is infeasible."""


class MarginalMismatchError(ValueError):
    """A plan's row or column sums disagree with the prescribed marginals."""


class NotLipschitzError(ValueError):
    """A potential violates |f(u) - f(v)| <= d(u, v) somewhere."""


class SearchSpaceTooLargeError(ValueError):
    """Brute-force enumeration refused: support too large to enumerate."""


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or a bare integer, exactly."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    """Always "num/den", lowest terms: 0 -> "0/1", 2/3 -> "2/3"."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _exact(value) -> Fraction:
    """Admit Fraction, int, or string; floats would smuggle in rounding."""
    if isinstance(value, float):
        raise TypeError("exact rational required, got float")
    return Fraction(value)


@dataclass(frozen=True)
class ProbMeasure:
    """Finitely supported probability measure on vertex indices."""

    masses: dict[int, Fraction]

    def __post_init__(self) -> None:
        cleaned = {}
        for v, q in self.masses.items():
            q = _exact(q)
            if q < 0:
                raise ValueError(f"negative mass {q} at vertex {v}")
            if q > 0:
                cleaned[v] = q
        if sum(cleaned.values(), ZERO) != ONE:
            raise ValueError("masses must sum to exactly 1")
        object.__setattr__(self, "masses", cleaned)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.masses))

    def mass(self, v: int) -> Fraction:
        return self.masses.get(v, ZERO)

    @property
    def total(self) -> Fraction:
        return sum(self.masses.values(), ZERO)


def mu_alpha(graph, x: int, alpha) -> ProbMeasure:
    """Lazy random-walk measure: alpha stays at x, the rest spreads evenly
    over the neighbors of x."""
    alpha = _exact(alpha)
    if not (ZERO <= alpha <= ONE):
        raise AlphaOutOfRangeError(f"alpha = {alpha} outside [0, 1]")
    nbrs = graph.neighbors(x)
    masses = {x: alpha}
    share = (ONE - alpha) / len(nbrs)
    if share > 0:
        for v in nbrs:
            masses[v] = share
    return ProbMeasure(masses)


@dataclass(frozen=True)
class TransportPlan:
    """Non-negative mass assignment on vertex pairs (zero entries dropped)."""

    entries: dict[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        cleaned = {}
        for (u, v), q in self.entries.items():
            q = _exact(q)
            if q < 0:
                raise ValueError(f"negative plan entry {q} at ({u}, {v})")
            if q > 0:
                cleaned[(u, v)] = q
        object.__setattr__(self, "entries", cleaned)


def verify_plan(dist, plan: TransportPlan, mu: ProbMeasure, nu: ProbMeasure) -> Fraction:
    """Check both marginals exactly and return the plan's transport cost."""
    row: dict[int, Fraction] = {}
    col: dict[int, Fraction] = {}
    cost = ZERO
    for (u, v), q in plan.entries.items():
        row[u] = row.get(u, ZERO) + q
        col[v] = col.get(v, ZERO) + q
        cost += q * dist.dist(u, v)
    for v in set(row) | set(mu.masses):
        if row.get(v, ZERO) != mu.mass(v):
            raise MarginalMismatchError(
                f"row marginal at vertex {v}: plan ships {row.get(v, ZERO)}, source holds {mu.mass(v)}"
            )
    for v in set(col) | set(nu.masses):
        if col.get(v, ZERO) != nu.mass(v):
            raise MarginalMismatchError(
                f"column marginal at vertex {v}: plan delivers {col.get(v, ZERO)}, target needs {nu.mass(v)}"
            )
    return cost


def verify_lipschitz(dist, f: dict[int, int]) -> bool:
    """|f(u) - f(v)| <= d(u, v) for every pair of assigned vertices.

    Pairwise checking is exactly the extendability condition, so partial
    potentials (defined on a support only) are judged correctly too.
    """
    keys = sorted(f)
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            u, v = keys[a], keys[b]
            if abs(f[u] - f[v]) > dist.dist(u, v):
                return False
    return True


def dual_bound(f: dict[int, int], mu: ProbMeasure, nu: ProbMeasure, dist=None) -> Fraction:
    """sum f d(mu - nu), a certified lower bound on W1 for 1-Lipschitz f.

    Pass dist to have the Lipschitz property verified rather than assumed.
    """
    if dist is not None and not verify_lipschitz(dist, f):
        raise NotLipschitzError("potential violates the Lipschitz condition")
    out = ZERO
    for v in set(mu.masses) | set(nu.masses):
        if v not in f:
            raise ValueError(f"potential undefined on support vertex {v}")
        out += f[v] * (mu.mass(v) - nu.mass(v))
    return out


def _reduced_supports(mu: ProbMeasure, nu: ProbMeasure):
    """Cancel common mass pointwise; metric costs make that lossless."""
    sources = []
    sinks = []
    for v in sorted(set(mu.masses) | set(nu.masses)):
        diff = mu.mass(v) - nu.mass(v)
        if diff > 0:
            sources.append((v, diff))
        elif diff < 0:
            sinks.append((v, -diff))
    return sources, sinks


def _min_cost_flow(costs: list[list[int]], supplies: list[Fraction], demands: list[Fraction]):
    """Successive shortest paths on the bipartite transportation network.

    Uncapacitated forward arcs, so Bellman-Ford handles the negative
    residual arcs directly; at these support sizes (<= 5 a side for the
    lazy-walk measures) sophistication would be wasted.  Returns the flow
    matrix and one pair of optimal integer duals (u, v) satisfying
    u_i + v_j <= c_ij with equality on every loaded arc.
    """
    p, q = len(supplies), len(demands)
    flow = [[ZERO] * q for _ in range(p)]
    rem_s = list(supplies)
    rem_t = list(demands)
    INF = float("inf")

    def bellman_ford():
        # nodes 0..p-1 are sources, p..p+q-1 are sinks; seed every source
        # that still has supply, like a virtual super-source with 0-arcs
        dist_v: list = [INF] * (p + q)
        parent: list = [None] * (p + q)
        for i in range(p):
            if rem_s[i] > 0:
                dist_v[i] = 0
        for _ in range(p + q):
            changed = False
            for i in range(p):
                if dist_v[i] == INF:
                    continue
                for j in range(q):
                    nd = dist_v[i] + costs[i][j]
                    if nd < dist_v[p + j]:
                        dist_v[p + j] = nd
                        parent[p + j] = i
                        changed = True
            for j in range(q):
                if dist_v[p + j] == INF:
                    continue
                for i in range(p):
                    if flow[i][j] > 0:
                        nd = dist_v[p + j] - costs[i][j]
                        if nd < dist_v[i]:
                            dist_v[i] = nd
                            parent[i] = p + j
                            changed = True
            if not changed:
                break
        return dist_v, parent

    while any(r > 0 for r in rem_s):
        dist_v, parent = bellman_ford()
        target = min(
            (j for j in range(q) if rem_t[j] > 0 and dist_v[p + j] < INF),
            key=lambda j: dist_v[p + j],
            default=None,
        )
        if target is None:
            raise UnbalancedMeasuresError("flow network ran out of demand before supply")
        # walk parents to the tree root: a still-supplied source
        node = p + target
        path = [node]
        while parent[node] is not None:
            node = parent[node]
            path.append(node)
        path.reverse()
        delta = min(rem_s[path[0]], rem_t[target])
        for a in range(len(path) - 1):
            if path[a + 1] >= p:  # forward arc source -> sink is uncapacitated
                continue
            delta = min(delta, flow[path[a + 1]][path[a] - p])
        for a in range(len(path) - 1):
            if path[a] < p:
                flow[path[a]][path[a + 1] - p] += delta
            else:
                flow[path[a + 1]][path[a] - p] -= delta
        rem_s[path[0]] -= delta
        rem_t[target] -= delta

    # integer duals from multi-source Bellman-Ford over the final residual
    # graph; paths have at most p+q-1 arcs, so one spare round proves
    # stabilization and anything still changing would be a negative cycle
    psi = [0] * (p + q)
    for _ in range(p + q + 1):
        changed = False
        for i in range(p):
            for j in range(q):
                if psi[i] + costs[i][j] < psi[p + j]:
                    psi[p + j] = psi[i] + costs[i][j]
                    changed = True
                if flow[i][j] > 0 and psi[p + j] - costs[i][j] < psi[i]:
                    psi[i] = psi[p + j] - costs[i][j]
                    changed = True
        if not changed:
            break
    else:
        raise RuntimeError("negative cycle in residual graph: flow is not optimal")
    dual_u = [-psi[i] for i in range(p)]
    dual_v = [psi[p + j] for j in range(q)]
    return flow, dual_u, dual_v


def _solve(dist, mu: ProbMeasure, nu: ProbMeasure):
    if mu.total != nu.total:
        raise UnbalancedMeasuresError(f"totals differ: {mu.total} vs {nu.total}")
    sources, sinks = _reduced_supports(mu, nu)
    costs = [[dist.dist(x, y) for y, _ in sinks] for x, _ in sources]
    flow, dual_u, dual_v = _min_cost_flow(costs, [s for _, s in sources], [t for _, t in sinks])
    value = ZERO
    for i in range(len(sources)):
        for j in range(len(sinks)):
            value += flow[i][j] * costs[i][j]
    return sources, sinks, flow, dual_v, value


def w1_exact(dist, mu: ProbMeasure, nu: ProbMeasure) -> tuple[Fraction, TransportPlan]:
    """Exact W1 plus an optimal plan (common mass parked on the diagonal)."""
    sources, sinks, flow, _, value = _solve(dist, mu, nu)
    entries: dict[tuple[int, int], Fraction] = {}
    for v in set(mu.masses) & set(nu.masses):
        stay = min(mu.mass(v), nu.mass(v))
        if stay > 0:
            entries[(v, v)] = stay
    for i, (x, _) in enumerate(sources):
        for j, (y, _) in enumerate(sinks):
            if flow[i][j] > 0:
                entries[(x, y)] = entries.get((x, y), ZERO) + flow[i][j]
    return value, TransportPlan(entries)


def w1_dual(dist, mu: ProbMeasure, nu: ProbMeasure) -> tuple[Fraction, dict[int, int]]:
    """Exact W1 plus an integral 1-Lipschitz potential attaining it.

    The potential extends the optimal transportation duals to every vertex
    by f(z) = min_j (d(z, y_j) - v_j); the min of 1-Lipschitz functions is
    1-Lipschitz, and the sandwich dual objective <= sum f d(mu - nu) <= W1
    pins the value.
    """
    _, sinks, _, dual_v, value = _solve(dist, mu, nu)
    n = dist.order
    if not sinks:
        f = {z: 0 for z in range(n)}
    else:
        f = {z: min(dist.dist(z, y) - dual_v[j] for j, (y, _) in enumerate(sinks)) for z in range(n)}
    attained = dual_bound(f, mu, nu)
    if attained != value:
        raise RuntimeError(f"dual potential attains {attained}, primal value is {value}")
    return value, f


def oracle_w1_bruteforce(dist, mu: ProbMeasure, nu: ProbMeasure, bound: int | None = None) -> Fraction:
    """Independent W1 oracle: enumerate integer potentials on the support.

    Integral optimal duals exist (integer costs, totally unimodular
    constraints), and pairwise Lipschitz on the support is exactly
    extendability to the whole graph, so maximizing sum f d(mu - nu) over
    integer pairwise-Lipschitz f on the union support recovers W1.  Depth
    first search with interval propagation and an optimistic bound; shares
    no code with the flow solver.
    """
    if mu.total != nu.total:
        raise UnbalancedMeasuresError(f"totals differ: {mu.total} vs {nu.total}")
    support = sorted(set(mu.masses) | set(nu.masses))
    m = len(support)
    if m > 16:
        raise SearchSpaceTooLargeError(f"support of size {m} exceeds the enumeration cap of 16")
    if m == 0:
        return ZERO
    if bound is None:
        bound = max(dist.dist(u, v) for u in support for v in support) if m > 1 else 0
    weights = [mu.mass(v) - nu.mass(v) for v in support]
    # order by distance to the first vertex so intervals tighten early
    order = sorted(range(m), key=lambda t: (dist.dist(support[0], support[t]), t))
    sup = [support[t] for t in order]
    wts = [weights[t] for t in order]

    best = [None]

    def interval(idx: int, values: list[int]) -> tuple[int, int]:
        lo, hi = -bound, bound
        for t in range(len(values)):
            d = dist.dist(sup[t], sup[idx])
            lo = max(lo, values[t] - d)
            hi = min(hi, values[t] + d)
        return lo, hi

    def dfs(idx: int, values: list[int], partial: Fraction) -> None:
        if idx == m:
            if best[0] is None or partial > best[0]:
                best[0] = partial
            return
        optimistic = partial
        bounds = []
        for t in range(idx, m):
            lo, hi = interval(t, values)
            if lo > hi:
                return
            bounds.append((lo, hi))
            optimistic += wts[t] * (hi if wts[t] > 0 else lo)
        if best[0] is not None and optimistic <= best[0]:
            return
        lo, hi = bounds[0]
        # try the promising endpoint first so the bound bites sooner
        candidates = range(hi, lo - 1, -1) if wts[idx] > 0 else range(lo, hi + 1)
        for val in candidates:
            values.append(val)
            dfs(idx + 1, values, partial + wts[idx] * val)
            values.pop()

    dfs(1, [0], ZERO)  # translation invariance: pin the first value at 0
    if best[0] is None:
        raise RuntimeError("enumeration found no feasible potential")
    return best[0]
