"""Geometry of the built-in lattice configurations.

Seven configurations are provided, keyed by name:

=================  ===  ===  =======================================================
name                D    M   hopping structure
=================  ===  ===  =======================================================
chain-nn            1    1   nearest neighbours (one label)
chain-nn-finite     1    1   ring of ``pbc_size`` sites, nearest neighbours
chain-nnn           1    1   unit steps (label 1) and double steps (label 2)
triangular          2    1   six nearest neighbours, symmetric hopping (one label)
bcc                 3    1   eight nearest neighbours, symmetric hopping
honeycomb           2    2   three A->B neighbours, bipartite
diamond             3    2   four A->B neighbours, bipartite
=================  ===  ===  =======================================================

Step displacements are stored as exact rationals in *primitive-basis
coordinates*: integral coordinates are translations of the underlying
point lattice, while the two bipartite lattices hop between sublattices
and pick up fractional offsets (thirds for honeycomb, quarters for
diamond).  Cartesian positions follow by applying ``direct_basis``; they
are irrational for the hexagonal family, which is why Cartesian tuples
are not the stored representation.

All k-space work happens on the primitive reciprocal cell, the
parallelepiped spanned by ``reciprocal_basis`` (rows ``b_i`` with
``b_i . a_j = 2*pi*delta_ij``).  Every integrand we need is periodic
under the reciprocal basis, so means over this cell equal means over any
other primitive cell, including the Wigner-Seitz one; the Wigner-Seitz
polytopes are never meshed.  Each hopping label carries a
:class:`DispersionTerm`, a finite cosine polynomial with *integer*
frequency vectors in fractional cell coordinates, so a uniform grid
finer than the bandwidth integrates it without aliasing.  For the
bipartite lattices the stored term is the squared-band kernel
``|sum_i exp(i k.e_i)|**2``, again a plain cosine polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

import numpy as np

Sublattice = Literal["AtoB", "BtoA"]

BUILTIN_NAMES = (
    "chain-nn",
    "chain-nn-finite",
    "chain-nnn",
    "triangular",
    "bcc",
    "honeycomb",
    "diamond",
)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class StepVector:
    """One hopping displacement, in primitive-basis coordinates."""

    displacement: tuple[Fraction, ...]
    label: int
    sublattice: Optional[Sublattice] = None

    def negated(self) -> "StepVector":
        flipped: Optional[Sublattice] = None
        if self.sublattice is not None:
            flipped = "BtoA" if self.sublattice == "AtoB" else "AtoB"
        return StepVector(tuple(-c for c in self.displacement), self.label, flipped)


@dataclass(frozen=True)
class DispersionTerm:
    """Cosine-harmonic form of one hopping label's band contribution.

    ``harmonics`` is a list of ``(frequency, amplitude)`` pairs; the
    frequency vector is integer-valued in fractional coordinates of the
    reciprocal cell.  ``bandwidth`` is the largest per-axis |frequency|
    and controls the alias-free grid size.  For one-sublattice lattices
    the term evaluates to ``sum_v cos(k.v)`` over the label's steps; for
    two-sublattice lattices it is the squared-band kernel.
    """

    label: int
    harmonics: tuple[tuple[tuple[int, ...], int], ...]
    bandwidth: int


@dataclass(frozen=True)
class LatticeSpec:
    """Immutable description of one lattice configuration."""

    name: str
    dimension: int
    basis_size: int
    steps: tuple[StepVector, ...]
    hopping_count: int
    direct_basis: tuple[tuple[float, ...], ...]
    reciprocal_basis: tuple[tuple[float, ...], ...]
    cell_volume: float
    dispersion_terms: tuple[DispersionTerm, ...]
    pbc_size: Optional[int] = None

    def steps_with_label(self, label: int) -> tuple[StepVector, ...]:
        return tuple(s for s in self.steps if s.label == label)

    def coordinate_scale(self) -> int:
        """Smallest integer making every step displacement integral."""
        return math.lcm(*(c.denominator for s in self.steps for c in s.displacement))

    def to_json_dict(self) -> dict:
        doc = {
            "name": self.name,
            "dimension": self.dimension,
            "basis_size": self.basis_size,
            "hopping_count": self.hopping_count,
            "pbc_size": self.pbc_size,
            "direct_basis": [list(row) for row in self.direct_basis],
            "reciprocal_basis": [list(row) for row in self.reciprocal_basis],
            "cell_volume": self.cell_volume,
            "steps": [
                {
                    "displacement": [str(c) for c in s.displacement],
                    "label": s.label,
                    "sublattice": s.sublattice,
                }
                for s in self.steps
            ],
        }
        return doc


def _pm_pairs(*vectors: tuple[tuple[Fraction, ...], int]) -> tuple[StepVector, ...]:
    steps = []
    for coords, label in vectors:
        fwd = StepVector(coords, label)
        steps.append(fwd)
        steps.append(fwd.negated())
    return tuple(steps)


def _bipartite_steps(vectors: tuple[tuple[Fraction, ...], ...]) -> tuple[StepVector, ...]:
    steps = []
    for coords in vectors:
        fwd = StepVector(coords, 1, "AtoB")
        steps.append(fwd)
        steps.append(fwd.negated())
    return tuple(steps)


def _fr(*nums) -> tuple[Fraction, ...]:
    return tuple(Fraction(n) for n in nums)


_SQ3 = math.sqrt(3.0)

# direct primitive bases (rows are the translation vectors a_p) and step sets
_GEOMETRY = {
    "chain-nn": dict(
        dimension=1,
        basis_size=1,
        basis=((1.0,),),
        steps=_pm_pairs((_fr(1), 1)),
        hopping_count=1,
    ),
    "chain-nnn": dict(
        dimension=1,
        basis_size=1,
        basis=((1.0,),),
        steps=_pm_pairs((_fr(1), 1), (_fr(2), 2)),
        hopping_count=2,
    ),
    "triangular": dict(
        dimension=2,
        basis_size=1,
        basis=((1.0, 0.0), (-0.5, _SQ3 / 2.0)),
        steps=_pm_pairs((_fr(1, 0), 1), (_fr(0, 1), 1), (_fr(-1, -1), 1)),
        hopping_count=1,
    ),
    "bcc": dict(
        dimension=3,
        basis_size=1,
        basis=((0.5, 0.5, 0.5), (-0.5, -0.5, 0.5), (-0.5, 0.5, -0.5)),
        steps=_pm_pairs(
            (_fr(1, 0, 0), 1),
            (_fr(0, 1, 0), 1),
            (_fr(0, 0, 1), 1),
            (_fr(-1, -1, -1), 1),
        ),
        hopping_count=1,
    ),
    # honeycomb shares the triangular point lattice, so we reuse the same
    # primitive basis and hence the identical reciprocal cell
    "honeycomb": dict(
        dimension=2,
        basis_size=2,
        basis=((1.0, 0.0), (-0.5, _SQ3 / 2.0)),
        steps=_bipartite_steps(
            (
                (Fraction(-1, 3), Fraction(-2, 3)),
                (Fraction(2, 3), Fraction(1, 3)),
                (Fraction(-1, 3), Fraction(1, 3)),
            )
        ),
        hopping_count=1,
    ),
    "diamond": dict(
        dimension=3,
        basis_size=2,
        basis=((0.5, 0.5, 0.0), (0.5, 0.0, 0.5), (0.0, 0.5, 0.5)),
        steps=_bipartite_steps(
            (
                (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)),
                (Fraction(-3, 4), Fraction(1, 4), Fraction(1, 4)),
                (Fraction(1, 4), Fraction(-3, 4), Fraction(1, 4)),
                (Fraction(1, 4), Fraction(1, 4), Fraction(-3, 4)),
            )
        ),
        hopping_count=1,
    ),
}
_GEOMETRY["chain-nn-finite"] = _GEOMETRY["chain-nn"]


def _integer_coords(coords: tuple[Fraction, ...]) -> tuple[int, ...]:
    if any(c.denominator != 1 for c in coords):
        raise ValueError(f"expected integral lattice coordinates, got {coords}")
    return tuple(int(c) for c in coords)


def _dispersion_terms(
    dimension: int,
    basis_size: int,
    steps: tuple[StepVector, ...],
    hopping_count: int,
) -> tuple[DispersionTerm, ...]:
    terms = []
    if basis_size == 1:
        for label in range(1, hopping_count + 1):
            harmonics = tuple(
                (_integer_coords(s.displacement), 1) for s in steps if s.label == label
            )
            bandwidth = max(abs(c) for freq, _ in harmonics for c in freq)
            terms.append(DispersionTerm(label, harmonics, bandwidth))
        return tuple(terms)
    # two sublattices: single squared-band kernel |sum_i exp(i k.e_i)|^2,
    # whose harmonics are the pairwise A->B step differences (integral vectors)
    forward = [s.displacement for s in steps if s.sublattice == "AtoB"]
    harmonics = [((0,) * dimension, len(forward))]
    for i, ei in enumerate(forward):
        for j, ej in enumerate(forward):
            if i != j:
                diff = tuple(a - b for a, b in zip(ei, ej))
                harmonics.append((_integer_coords(diff), 1))
    bandwidth = max(abs(c) for freq, _ in harmonics for c in freq)
    return (DispersionTerm(1, tuple(harmonics), bandwidth),)


def _reciprocal_basis(basis: tuple[tuple[float, ...], ...]) -> tuple[tuple[float, ...], ...]:
    a = np.asarray(basis, dtype=float)
    b = _TWO_PI * np.linalg.inv(a).T
    return tuple(tuple(float(x) for x in row) for row in b)


def builtin(name: str, pbc_size: Optional[int] = None) -> LatticeSpec:
    """Return the built-in configuration ``name``.

    ``pbc_size`` is required for ``chain-nn-finite`` (at least 3; smaller
    rings do not have two distinct nearest-neighbour edges per site) and
    rejected for every other lattice.
    """
    if name not in _GEOMETRY:
        raise ValueError(f"unknown lattice {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    if name == "chain-nn-finite":
        if pbc_size is None:
            raise ValueError("chain-nn-finite requires pbc_size")
        if pbc_size < 3:
            raise ValueError(f"pbc_size must be >= 3, got {pbc_size}")
    elif pbc_size is not None:
        raise ValueError(f"pbc_size is only meaningful for chain-nn-finite, not {name}")

    geo = _GEOMETRY[name]
    basis = geo["basis"]
    recip = _reciprocal_basis(basis)
    volume = abs(float(np.linalg.det(np.asarray(recip))))
    spec = LatticeSpec(
        name=name,
        dimension=geo["dimension"],
        basis_size=geo["basis_size"],
        steps=geo["steps"],
        hopping_count=geo["hopping_count"],
        direct_basis=basis,
        reciprocal_basis=recip,
        cell_volume=volume,
        dispersion_terms=_dispersion_terms(
            geo["dimension"], geo["basis_size"], geo["steps"], geo["hopping_count"]
        ),
        pbc_size=pbc_size if name == "chain-nn-finite" else None,
    )
    _validate(spec)
    return spec


def _validate(spec: LatticeSpec) -> None:
    by_key = {(s.displacement, s.label, s.sublattice) for s in spec.steps}
    labels = sorted({s.label for s in spec.steps})
    if labels != list(range(1, spec.hopping_count + 1)):
        raise ValueError(f"{spec.name}: labels {labels} not contiguous 1..{spec.hopping_count}")
    for s in spec.steps:
        if all(c == 0 for c in s.displacement):
            raise ValueError(f"{spec.name}: zero step displacement")
        neg = s.negated()
        if (neg.displacement, neg.label, neg.sublattice) not in by_key:
            raise ValueError(f"{spec.name}: step set not closed under negation: {s}")
        if (spec.basis_size == 2) != (s.sublattice is not None):
            raise ValueError(f"{spec.name}: sublattice flag inconsistent with basis size")
    # reciprocal consistency: translations t satisfy exp(i b.t) = 1; for the
    # bipartite lattices the translations are the A->B step differences
    a = np.asarray(spec.direct_basis)
    b = np.asarray(spec.reciprocal_basis)
    if not np.allclose(b @ a.T, _TWO_PI * np.eye(spec.dimension), atol=1e-12):
        raise ValueError(f"{spec.name}: reciprocal basis is not dual to the direct basis")
    if spec.basis_size == 1:
        translations = [s.displacement for s in spec.steps]
    else:
        fwd = [s.displacement for s in spec.steps if s.sublattice == "AtoB"]
        translations = [
            tuple(x - y for x, y in zip(ei, ej)) for ei in fwd for ej in fwd
        ]
    for t in translations:
        cart = np.array([float(c) for c in t]) @ a
        phases = b @ cart / _TWO_PI
        if not np.allclose(phases, np.round(phases), atol=1e-9):
            raise ValueError(f"{spec.name}: translation {t} incompatible with reciprocal cell")


def dispersion_value(spec: LatticeSpec, label: int, k) -> float:
    """Evaluate the label's dispersion at Cartesian quasimomentum ``k``.

    One-sublattice lattices give ``sum_v cos(k.v)`` over the steps with
    that label (unit hopping amplitude).  Two-sublattice lattices give
    the squared-band kernel ``|sum_i exp(i k.e_i)|**2``, the quantity
    whose powers determine all even-order coefficients.
    """
    if not 1 <= label <= spec.hopping_count:
        raise ValueError(f"label {label} out of range 1..{spec.hopping_count}")
    kv = np.asarray(k, dtype=float)
    if kv.shape != (spec.dimension,):
        raise ValueError(f"k must have {spec.dimension} components")
    a = np.asarray(spec.direct_basis)
    term = spec.dispersion_terms[label - 1]
    total = 0.0
    for freq, amp in term.harmonics:
        cart = np.asarray(freq, dtype=float) @ a
        total += amp * math.cos(float(kv @ cart))
    return total
