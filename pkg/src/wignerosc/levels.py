"""Shared spectrum-line record and the tolerance-merging helper."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

__all__ = ["SpectrumLine", "merge_lines"]


@dataclass(frozen=True)
class SpectrumLine:
    """One energy level: eigenvalue (units of hbar), exact multiplicity, class label.

    ``label`` is the canonical representative of the merged class and is
    representation-specific: a basis vector for gl(1|n), a
    (height, signature, pattern) triple for osp(1|2n), an occupation
    tuple for the boson Fock space.
    """

    energy: float
    multiplicity: int
    label: Any


def merge_lines(raw: list[tuple[float, int, Any]], merge_tol: float) -> list[SpectrumLine]:
    """Collapse (energy, multiplicity, label) triples into sorted spectrum lines.

    Input triples whose energies differ by at most ``merge_tol`` from
    the previous cluster member are merged; the reported energy and
    label come from the lowest-energy member (ties broken by label, so
    output is deterministic).
    """
    if merge_tol < 0:
        raise ValueError("merge_tol must be non-negative")
    ordered = sorted(raw)  # labels must be orderable for deterministic ties
    lines: list[SpectrumLine] = []
    cluster: list[tuple[float, int, Any]] = []

    def flush() -> None:
        if cluster:
            energy, _, label = cluster[0]
            lines.append(SpectrumLine(energy=energy,
                                      multiplicity=sum(m for _, m, _ in cluster),
                                      label=label))

    prev = None
    for triple in ordered:
        if prev is not None and triple[0] - prev > merge_tol:
            flush()
            cluster = []
        cluster.append(triple)
        prev = triple[0]
    flush()
    return lines
