"""Diagnostic reports over decomposed flows.

A report bundles the topological invariants, the energy split of one
observed flow, where its harmonic load lives (edge localization), and
advisory classification hints that map invariant patterns onto known
distributed-architecture cycle categories. Hints are informative
strings, never decisions: they point an operator at the class of
remediation (rebalancing vs saga tuning vs restructuring) that the
invariants make plausible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .cells import CellComplex
from .hodge import EdgeFlow, HodgeDecomposition, decompose, harmonic_stress
from .linalg import RankTolerance
from .topology import BettiNumbers, betti, spectral_gap, spectrum

__all__ = [
    "ComponentEnergies",
    "SpectralGaps",
    "DiagnosticReport",
    "WindowTrend",
    "report",
    "classify",
    "compare_windows",
]


class ComponentEnergies(NamedTuple):
    gradient: float
    curl: float
    harmonic: float
    total: float


class SpectralGaps(NamedTuple):
    l0: float
    l1: float
    l2: float


@dataclass(frozen=True, eq=False)
class DiagnosticReport:
    betti: BettiNumbers
    energies: ComponentEnergies
    harmonic_stress: float
    harmonic_support: tuple[tuple[str, float], ...]
    spectral_gaps: SpectralGaps
    classification_hints: tuple[str, ...]
    isolated_nodes: tuple[str, ...]
    support_fraction: float
    window_index: int | None = None
    decomposition: HodgeDecomposition = field(repr=False, default=None)  # type: ignore[assignment]
    edge_ids: tuple[str, ...] = field(repr=False, default=())

    def to_dict(self) -> dict:
        """JSON-ready form with stable field names."""
        tol = self.betti.tol_used
        doc = {
            "betti": {
                "beta0": self.betti.beta0,
                "beta1": self.betti.beta1,
                "beta2": self.betti.beta2,
            },
            "energies": {
                "gradient": self.energies.gradient,
                "curl": self.energies.curl,
                "harmonic": self.energies.harmonic,
                "total": self.energies.total,
            },
            "harmonic_stress": self.harmonic_stress,
            "harmonic_support": [[edge_id, value] for edge_id, value in self.harmonic_support],
            "spectral_gaps": {
                "l0": self.spectral_gaps.l0,
                "l1": self.spectral_gaps.l1,
                "l2": self.spectral_gaps.l2,
            },
            "classification_hints": list(self.classification_hints),
            "isolated_nodes": list(self.isolated_nodes),
            "support_fraction": self.support_fraction,
            "tolerance": {
                "absolute_floor": tol.absolute_floor,
                "relative_factor": tol.relative_factor,
            },
        }
        if self.window_index is not None:
            doc["window_index"] = self.window_index
        return doc

    def to_text(self) -> str:
        lines = []
        if self.window_index is not None:
            lines.append(f"window: {self.window_index}")
        lines.append(
            f"betti: beta0={self.betti.beta0} beta1={self.betti.beta1} "
            f"beta2={self.betti.beta2}"
        )
        e = self.energies
        lines.append(
            f"energy: gradient={e.gradient:.6g} curl={e.curl:.6g} "
            f"harmonic={e.harmonic:.6g} total={e.total:.6g}"
        )
        lines.append(f"harmonic stress: {self.harmonic_stress:.6g}")
        g = self.spectral_gaps
        lines.append(f"spectral gaps: L0={g.l0:.6g} L1={g.l1:.6g} L2={g.l2:.6g}")
        if self.harmonic_support:
            lines.append(f"harmonic support (threshold {self.support_fraction:g} of max):")
            for edge_id, value in self.harmonic_support:
                lines.append(f"  {edge_id}: {value:.6g}")
        else:
            lines.append("harmonic support: none")
        if self.isolated_nodes:
            lines.append("isolated nodes: " + ", ".join(self.isolated_nodes))
        for hint in self.classification_hints:
            lines.append(f"hint: {hint}")
        return "\n".join(lines)


class WindowTrend(NamedTuple):
    energy_gradient: tuple[float, ...]
    energy_curl: tuple[float, ...]
    energy_harmonic: tuple[float, ...]
    energy_total: tuple[float, ...]
    stress: tuple[float, ...]
    support_sets: tuple[frozenset[str], ...]
    structure_change_windows: tuple[int, ...]


def classify(
    b: BettiNumbers, stress: float, kernel_flags: tuple[bool, bool, bool]
) -> list[str]:
    """Advisory hints from invariant patterns.

    Pure in (betti, stress > 0, kernel flags). The component-count hint
    folds in the causal-retry reading of disconnected pieces, which is
    heuristic: call-flow data alone cannot tell an isolated function
    from a causally-coupled retry domain.
    """
    kernel_l0, kernel_l1, kernel_l2 = kernel_flags
    hints: list[str] = []
    if b.beta0 > 1 and kernel_l0:
        hints.append(
            f"{b.beta0} disconnected components: independent subsystems or isolated "
            "functions; causally-coupled retry domains stay invisible to edge flows "
            "(component/causal-cycle category)"
        )
    if b.beta1 > 0 and kernel_l1:
        hints.append(
            f"{b.beta1} non-reducible cycle (loop) structure(s): unorchestrated cycles "
            "not bounded by any declared workflow face (structural retry/feedback category)"
        )
        if stress > 0:
            hints.append(
                f"harmonic stress {stress:.3g}: circulating load on those cycles "
                "persists under local balancing; dampen or restructure"
            )
    if b.beta2 > 0 and kernel_l2:
        hints.append(
            f"{b.beta2} enclosed saga surface(s): closed compensation or fork-join "
            "workflow volumes (saga-surface category)"
        )
    return hints


def report(
    c: CellComplex,
    f: EdgeFlow,
    tol: RankTolerance = RankTolerance(),
    support_fraction: float = 0.05,
    window_index: int | None = None,
) -> DiagnosticReport:
    """Full diagnostic pass: decomposition, invariants, localization, hints.

    ``harmonic_support`` lists edges whose |h| exceeds ``support_fraction``
    times the largest |h|, descending; the threshold is recorded in the
    report so results stay auditable.
    """
    if not (0.0 < support_fraction <= 1.0):
        raise ValueError(f"support_fraction must be in (0, 1], got {support_fraction}")
    d = decompose(c, f, tol)
    b = betti(c, tol)
    energies = ComponentEnergies(
        gradient=d.energy_grad,
        curl=d.energy_curl,
        harmonic=d.energy_harm,
        total=d.energy_total,
    )
    stress = harmonic_stress(d) if d.energy_total > 0 else 0.0

    h = np.abs(d.harmonic.values)
    h_max = float(h.max()) if h.size else 0.0
    # a numerically-zero harmonic component has no support; without this
    # floor a pure-gradient flow would report rounding noise as support
    h_floor = 1e-12 * (1.0 + float(np.linalg.norm(f.values)))
    support: list[tuple[str, float]] = []
    if h_max > h_floor:
        threshold = support_fraction * h_max
        for i in np.argsort(-h, kind="stable"):
            if h[i] > threshold:
                support.append((c.edges[int(i)].id, float(h[int(i)])))

    gaps = SpectralGaps(
        l0=spectral_gap(spectrum(c, 0), tol) if c.num_nodes else 0.0,
        l1=spectral_gap(spectrum(c, 1), tol) if c.num_edges else 0.0,
        l2=spectral_gap(spectrum(c, 2), tol) if c.num_faces else 0.0,
    )
    kernel_flags = (b.beta0 > 0, b.beta1 > 0, b.beta2 > 0)
    hints = classify(b, stress, kernel_flags)
    if f.metric_label == "covariance" or f.metric_label.startswith("cov("):
        hints.append(
            "covariance-derived flow: covariance is orientation-symmetric, values are "
            "stored on each edge's canonical orientation; read component signs under "
            "that convention"
        )
    return DiagnosticReport(
        betti=b,
        energies=energies,
        harmonic_stress=stress,
        harmonic_support=tuple(support),
        spectral_gaps=gaps,
        classification_hints=tuple(hints),
        isolated_nodes=c.isolated_node_ids(),
        support_fraction=support_fraction,
        window_index=window_index,
        decomposition=d,
        edge_ids=c.edge_ids(),
    )


def compare_windows(reports: list[DiagnosticReport]) -> WindowTrend:
    """Energy and stress series across windows, flagging structure changes.

    A window is flagged when its harmonic-support edge set differs from
    the previous window's: magnitudes may move with load, but the set of
    harmonically loaded edges only moves when structure (or which holes
    the traffic excites) changes.
    """
    if len(reports) < 2:
        raise ValueError("need at least 2 window reports to compare")
    edge_ids = reports[0].edge_ids
    for i, rep in enumerate(reports[1:], start=1):
        if rep.edge_ids != edge_ids:
            raise ValueError(f"window {i} was computed over a different edge set")
    support_sets = tuple(
        frozenset(edge_id for edge_id, _ in rep.harmonic_support) for rep in reports
    )
    changes = tuple(
        i for i in range(1, len(support_sets)) if support_sets[i] != support_sets[i - 1]
    )
    return WindowTrend(
        energy_gradient=tuple(r.energies.gradient for r in reports),
        energy_curl=tuple(r.energies.curl for r in reports),
        energy_harmonic=tuple(r.energies.harmonic for r in reports),
        energy_total=tuple(r.energies.total for r in reports),
        stress=tuple(r.harmonic_stress for r in reports),
        support_sets=support_sets,
        structure_change_windows=changes,
    )
