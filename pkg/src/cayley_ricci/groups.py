"""Exact arithmetic for dihedral, generalized quaternion, and cyclic groups.

Every element is kept in the canonical form sigma^i * tau^j (j = 0 for
cyclic groups, where i is just a residue).  Multiplication and inversion
are closed-form index arithmetic, so group operations never leave the
canonical representation and equality is plain tuple equality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

DIHEDRAL = "D"
QUATERNION = "Q"
CYCLIC = "Z"

_KINDS = (DIHEDRAL, QUATERNION, CYCLIC)


@dataclass(frozen=True, order=True)
class GroupSpec:
    """A finite group from one of the three supported families.

    kind "D": dihedral D_n of order 2n, n >= 3.
    kind "Q": generalized quaternion Q_{4m} of order 4m, m >= 2 (param = m).
    kind "Z": cyclic Z/nZ of order n, n >= 1.
    """

    kind: str
    param: int

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == DIHEDRAL and self.param < 3:
            raise ValueError(f"dihedral group needs n >= 3, got {self.param}")
        if self.kind == QUATERNION and self.param < 2:
            raise ValueError(f"generalized quaternion group needs m >= 2, got {self.param}")
        if self.kind == CYCLIC and self.param < 1:
            raise ValueError(f"cyclic group needs n >= 1, got {self.param}")

    @property
    def order(self) -> int:
        if self.kind == DIHEDRAL:
            return 2 * self.param
        if self.kind == QUATERNION:
            return 4 * self.param
        return self.param

    @property
    def rot_period(self) -> int:
        """Order of sigma: n for D_n, 2m for Q_4m, n for Z/nZ."""
        if self.kind == QUATERNION:
            return 2 * self.param
        return self.param

    def __str__(self) -> str:
        if self.kind == QUATERNION:
            return f"Q:{4 * self.param}"
        return f"{self.kind}:{self.param}"


@dataclass(frozen=True, order=True)
class GroupElement:
    """Canonical form sigma^i tau^j with 0 <= i < rot_period, j in {0, 1}."""

    i: int
    j: int = 0


def parse_group(text: str) -> GroupSpec:
    """Parse "D:<n>", "Q:<4m>" (the group order, divisible by 4), or "Z:<n>"."""
    m = re.fullmatch(r"([DQZ]):(\d+)", text.strip())
    if not m:
        raise ValueError(f"cannot parse group descriptor {text!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == QUATERNION:
        if num % 4 != 0:
            raise ValueError(f"quaternion descriptor Q:<order> needs order divisible by 4, got {num}")
        return GroupSpec(QUATERNION, num // 4)
    return GroupSpec(kind, num)


def identity(spec: GroupSpec) -> GroupElement:
    return GroupElement(0, 0)


def _check_canonical(spec: GroupSpec, a: GroupElement) -> None:
    if not (0 <= a.i < spec.rot_period):
        raise ValueError(f"element {a} not canonical for {spec}: rotation index out of range")
    if a.j not in (0, 1) or (spec.kind == CYCLIC and a.j != 0):
        raise ValueError(f"element {a} not canonical for {spec}: bad reflection index")


def mul(spec: GroupSpec, a: GroupElement, b: GroupElement) -> GroupElement:
    """Product a * b in canonical form.

    With a = sigma^ai tau^aj and b = sigma^bi tau^bj, pushing sigma^bi left
    through tau^aj uses tau sigma = sigma^-1 tau, so the rotation part is
    ai + bi when aj = 0 and ai - bi when aj = 1.  In Q_4m the extra relation
    tau^2 = sigma^m turns tau*tau into a rotation by m instead of identity.
    """
    _check_canonical(spec, a)
    _check_canonical(spec, b)
    period = spec.rot_period
    if a.j == 0:
        return GroupElement((a.i + b.i) % period, b.j)
    rot = (a.i - b.i) % period
    if b.j == 0:
        return GroupElement(rot, 1)
    # a.j == b.j == 1: tau^2 contributes sigma^m for quaternion, e for dihedral
    if spec.kind == QUATERNION:
        return GroupElement((rot + spec.param) % period, 0)
    return GroupElement(rot, 0)


def inverse(spec: GroupSpec, a: GroupElement) -> GroupElement:
    _check_canonical(spec, a)
    period = spec.rot_period
    if a.j == 0:
        return GroupElement((-a.i) % period, 0)
    if spec.kind == QUATERNION:
        # (sigma^i tau)^-1 = sigma^(i+m) tau since (sigma^i tau)^2 = sigma^m
        return GroupElement((a.i + spec.param) % period, 1)
    return a  # dihedral reflections are involutions


def elements(spec: GroupSpec) -> list[GroupElement]:
    """All elements, rotations-first per exponent: e, t, s, st, s2, s2t, ...

    For cyclic groups this is just the residues 0..n-1.
    """
    if spec.kind == CYCLIC:
        return [GroupElement(i, 0) for i in range(spec.param)]
    out = []
    for i in range(spec.rot_period):
        out.append(GroupElement(i, 0))
        out.append(GroupElement(i, 1))
    return out


def element_label(spec: GroupSpec, a: GroupElement) -> str:
    """Human-readable canonical label: "e", "t", "s", "st", "s2", "s2t", ...

    Cyclic group elements are labelled by their residue.
    """
    _check_canonical(spec, a)
    if spec.kind == CYCLIC:
        return str(a.i)
    if a.i == 0:
        return "t" if a.j else "e"
    stem = "s" if a.i == 1 else f"s{a.i}"
    return stem + ("t" if a.j else "")


_LABEL_RE = re.compile(r"e|(?:s(\d*))?(t)?")


def parse_element(spec: GroupSpec, text: str) -> GroupElement:
    """Inverse of element_label."""
    text = text.strip()
    if spec.kind == CYCLIC:
        try:
            value = int(text)
        except ValueError:
            raise ValueError(f"cannot parse element {text!r} for {spec}") from None
        return GroupElement(value % spec.param, 0)
    m = _LABEL_RE.fullmatch(text)
    if not m or not text:
        raise ValueError(f"cannot parse element {text!r} for {spec}")
    if text == "e":
        return GroupElement(0, 0)
    exp = 0
    if m.group(1) is not None:
        exp = int(m.group(1)) if m.group(1) else 1
    elem = GroupElement(exp % spec.rot_period, 1 if m.group(2) else 0)
    _check_canonical(spec, elem)
    return elem
