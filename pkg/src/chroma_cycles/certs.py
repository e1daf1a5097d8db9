"""Cycle certificates and the errors raised by the extractors."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .coloring import Coloring
from .graph import Edge, Graph


class PreconditionError(ValueError):
    """Input does not satisfy the hypothesis of the extraction."""


class TheoremViolation(RuntimeError):
    """The construction failed where it must succeed.

    Carries the coloring that the failed step produced; for a genuine failure
    this colors the whole graph and so refutes the hypothesis.
    """

    def __init__(self, message: str, coloring: Coloring | None = None, sigma=None):
        super().__init__(message)
        self.coloring = coloring
        self.sigma = sigma


class Tag(str, Enum):
    ONE_MOD_R = "ONE_MOD_R"
    ZERO_MOD_R = "ZERO_MOD_R"
    CIRC_IS = "CIRC_IS"
    CIRC_ONE = "CIRC_ONE"
    CIRC_ZERO = "CIRC_ZERO"


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    """Rotate to the least vertex, then take the direction with the smaller second vertex."""
    seq = list(vertices)
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


def cycle_edges(vertices: Sequence[int]) -> list[Edge]:
    return [Edge(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


@dataclass(frozen=True)
class CycleCert:
    vertices: tuple[int, ...]
    modulus: int
    tag: Tag
    coloring: Coloring
    sigma: object = None
    through_edge: Edge | None = None
    class_index: int | None = None  # the i in "length = i*s mod k" for circular certificates
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def residue(self) -> int:
        return self.length % self.modulus

    @property
    def canonical(self) -> tuple[int, ...]:
        return canonical_cycle(self.vertices)

    def to_dict(self) -> dict:
        out = {
            "tag": self.tag.value,
            "vertices": list(self.vertices),
            "length": self.length,
            "modulus": self.modulus,
            "residue": self.residue,
            "through_edge": [self.through_edge.u, self.through_edge.v] if self.through_edge else None,
            "sigma": _sigma_json(self.sigma),
            "coloring": self.coloring.to_dict(),
        }
        if self.class_index is not None:
            out["i"] = self.class_index
        return out


def _sigma_json(sigma):
    if sigma is None:
        return None
    support = getattr(sigma, "support", None)
    if support is not None:
        return list(support)
    return str(sigma)


def check_cycle(g: Graph, vertices: Sequence[int], through: Edge | None = None, avoid: Edge | None = None) -> list[str]:
    """Problems with ``vertices`` as a simple cycle of ``g``; empty when fine."""
    problems = []
    if len(vertices) < 3:
        problems.append(f"cycle has only {len(vertices)} vertices")
    if len(set(vertices)) != len(vertices):
        problems.append("repeated vertex")
    edges = cycle_edges(vertices) if len(vertices) >= 2 else []
    for e in edges:
        if not g.has_edge(e.u, e.v):
            problems.append(f"({e.u},{e.v}) is not an edge")
    if through is not None and through not in edges:
        problems.append(f"edge {through} not on cycle")
    if avoid is not None and avoid in edges:
        problems.append(f"edge {avoid} is on cycle")
    return problems


def validate_cert(g: Graph, cert: CycleCert) -> list[str]:
    """Re-check a certificate against ``g`` from scratch."""
    problems = check_cycle(g, cert.vertices, through=cert.through_edge)
    expected = {
        Tag.ONE_MOD_R: 1 % cert.modulus,
        Tag.CIRC_ONE: 1 % cert.modulus,
        Tag.ZERO_MOD_R: 0,
        Tag.CIRC_ZERO: 0,
    }.get(cert.tag)
    if expected is not None and cert.residue != expected:
        problems.append(f"{cert.tag.value} certificate has residue {cert.residue}")
    if cert.tag is Tag.CIRC_IS:
        spec = cert.coloring.spec
        if cert.class_index is None or not 1 <= cert.class_index <= spec.d:
            problems.append(f"class index {cert.class_index} outside 1..{spec.d}")
        elif (cert.class_index * spec.s - cert.length) % spec.k:
            problems.append(f"length {cert.length} is not {cert.class_index}*s mod {spec.k}")
    return problems
