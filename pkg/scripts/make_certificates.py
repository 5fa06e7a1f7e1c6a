"""Regenerate data/certificates/*.plan and *.pot at alpha = 1/2.

Plans come straight from the family certificates (the hand-transcribed
moves); potentials are produced once by the dual solver, then checked by
the solver-independent verifiers before anything is written.  Run from
the repository root:

    python3 scripts/make_certificates.py
"""
from __future__ import annotations

import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cayley_ricci.certificates import (
    FAMILY_CERTIFICATES,
    format_plan_file,
    format_potential_file,
    measures_at,
    plan_at,
)
from cayley_ricci.metric import all_pairs
from cayley_ricci.transport import dual_bound, verify_lipschitz, verify_plan, w1_dual

ALPHA = Fraction(1, 2)
OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "cayley_ricci" / "data" / "certificates"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for cert in FAMILY_CERTIFICATES:
        graph = cert.graph()
        dm = all_pairs(graph)
        mu, nu = measures_at(cert, graph, ALPHA)
        plan = plan_at(cert, graph, ALPHA)
        cost = verify_plan(dm, plan, mu, nu)
        claimed = cert.claimed_w1(ALPHA)
        if cost != claimed:
            raise SystemExit(f"{cert.name}: plan cost {cost} != claimed W1 {claimed}")
        value, f = w1_dual(dm, mu, nu)
        if value != claimed:
            raise SystemExit(f"{cert.name}: dual value {value} != claimed W1 {claimed}")
        if not verify_lipschitz(dm, f):
            raise SystemExit(f"{cert.name}: generated potential is not 1-Lipschitz")
        if dual_bound(f, mu, nu) != claimed:
            raise SystemExit(f"{cert.name}: potential does not attain the claimed W1")
        head = (
            f"{cert.name}: graph {cert.group} {cert.gens}, edge ({cert.edge[0]}, {cert.edge[1]}), alpha = 1/2\n"
            f"certifies W1 = {claimed} (kappa = {cert.kappa})"
        )
        (OUT / f"{cert.name}.plan").write_text(format_plan_file(cert, graph, ALPHA, header=head))
        (OUT / f"{cert.name}.pot").write_text(format_potential_file(cert, graph, f, header=head))
        print(f"wrote {cert.name:18s} W1 = {claimed}")
    print(f"{len(FAMILY_CERTIFICATES)} certificates under {OUT}")


if __name__ == "__main__":
    main()
