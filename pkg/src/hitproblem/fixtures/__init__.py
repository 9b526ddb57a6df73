"""Polynomials in five variables used as reference representatives.

``xi_n0`` (degree 18) and ``xi_n1`` (degree 41) are the invariant
representatives; ``R4prime`` and ``g1`` .. ``g31`` are degree-18 pieces.
"""

from __future__ import annotations

from importlib import resources

from ..monomials import Polynomial, parse_poly

__all__ = ["load_fixture", "fixture_names"]


def fixture_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".poly"))


def load_fixture(name: str, m: int = 5) -> Polynomial:
    path = resources.files(__name__) / f"{name}.poly"
    if not path.is_file():
        raise KeyError(f"no fixture named {name!r}")
    return parse_poly(path.read_text(), m)
