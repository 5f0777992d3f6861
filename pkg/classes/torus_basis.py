"""The explicit real eigenbasis of the flat three-torus R^3 / Z^3."""

import math
from collections import defaultdict
from itertools import combinations, product
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from classes.equivariant_field import EquivariantField
from classes.manifold_tag import CaseTag
from modules.errors import QuadratureError

ALLOWED_COEFFICIENTS = (1.0, -1.0, 0.5, -0.5)
TORUS2 = "torus2"

CASE_RANK = {
    CaseTag.CASE1: 0,
    CaseTag.CASE2: 1,
    CaseTag.CASE3: 2,
    CaseTag.CASE4: 3,
    CaseTag.CONSTANT: 4,
}

# Rows of the equal-frequency family: (first term, second term), each as
# {axis: j} over the axes that carry the frequency
EQUAL_PAIR_ROWS = (
    ({0: 0, 1: 0}, {0: 1, 2: 0}),
    ({1: 0, 2: 0}, {1: 1, 0: 0}),
    ({2: 0, 0: 0}, {2: 1, 1: 0}),
    ({0: 1, 1: 1}, {2: 1, 0: 0}),
    ({1: 1, 2: 1}, {0: 1, 1: 0}),
    ({2: 1, 0: 1}, {1: 1, 2: 0}),
)

SINGLE_AXIS_ROWS = ((0, 1, 2), (0, 2, 1), (1, 2, 0))


def trig_factor(j: int, freq: int, x: np.ndarray) -> np.ndarray:
    """f_1(n x) = cos(2 pi n x) and f_0(n x) = sin(2 pi n x).

    :param j: 1 for cosine, 0 for sine.
    :type j: int
    :param freq: Frequency n.
    :type freq: int
    :param x: Coordinates.
    :type x: np.ndarray
    :return: Factor values.
    :rtype: np.ndarray
    """
    angle = 2.0 * math.pi * freq * np.asarray(x, dtype=float)
    return np.cos(angle) if j == 1 else np.sin(angle)


class TorusFactor(BaseModel):
    """One per-axis factor f_j(freq * x).

    :ivar j: 1 for cosine, 0 for sine.
    :ivar freq: Nonnegative frequency; zero frequency means the constant 1.
    """

    j: int = Field(ge=0, le=1)
    freq: int = Field(ge=0)

    @model_validator(mode="after")
    def _constant_is_cosine(self) -> "TorusFactor":
        if self.freq == 0 and self.j != 1:
            raise ValueError("a zero-frequency factor must be the constant cos(0) = 1")
        return self


class TorusTerm(BaseModel):
    """coefficient * prod over axes of f_j(freq * x_axis).

    :ivar coefficient: One of +-1, +-1/2.
    :ivar factors: One factor per axis.
    """

    coefficient: float
    factors: tuple[TorusFactor, TorusFactor, TorusFactor]

    @field_validator("coefficient")
    @classmethod
    def _listed_coefficient(cls, value: float) -> float:
        if value not in ALLOWED_COEFFICIENTS:
            raise ValueError(f"coefficient must be one of {ALLOWED_COEFFICIENTS}, got {value}")
        return value

    @property
    def frequencies(self) -> tuple[int, int, int]:
        """Per-axis frequencies."""
        return tuple(f.freq for f in self.factors)

    @property
    def js(self) -> tuple[int, int, int]:
        """Per-axis cosine/sine selectors."""
        return tuple(f.j for f in self.factors)

    @classmethod
    def build(cls, coefficient: float, layout: dict[int, tuple[int, int]]) -> "TorusTerm":
        """Build a term from {axis: (j, freq)}; missing axes are constant.

        :param coefficient: Term coefficient.
        :type coefficient: float
        :param layout: Non-constant factors by axis.
        :type layout: dict[int, tuple[int, int]]
        :return: The term.
        :rtype: TorusTerm
        """
        factors = tuple(
            TorusFactor(j=layout[axis][0], freq=layout[axis][1]) if axis in layout else TorusFactor(j=1, freq=0)
            for axis in range(3)
        )
        return cls(coefficient=coefficient, factors=factors)

    def evaluate(self, x1: np.ndarray, x2: np.ndarray, x3: np.ndarray) -> np.ndarray:
        """Evaluate the term on broadcastable coordinates."""
        value = self.coefficient
        for factor, x in zip(self.factors, (x1, x2, x3)):
            if factor.freq:
                value = value * trig_factor(factor.j, factor.freq, x)
        return np.asarray(value, dtype=float)


class TorusBasisElement(BaseModel):
    """A basis eigenfunction: a signed sum of trigonometric products.

    :ivar case: Family the element belongs to.
    :ivar frequencies: Frequency triple of the first term.
    :ivar terms: The summands.
    """

    case: CaseTag
    frequencies: tuple[int, int, int]
    terms: list[TorusTerm]

    @model_validator(mode="after")
    def _single_eigenvalue(self) -> "TorusBasisElement":
        norms = {sum(n * n for n in t.frequencies) for t in self.terms}
        if len(norms) != 1:
            raise ValueError(f"terms mix eigenvalues: squared frequency norms {sorted(norms)}")
        return self

    @property
    def max_freq(self) -> int:
        """Largest frequency appearing in any term."""
        return max(max(t.frequencies) for t in self.terms)

    def eigenvalue(self) -> float:
        """lambda = 4 pi^2 (m1^2 + m2^2 + m3^2), so that Delta e = -lambda e.

        :return: The eigenvalue; 0 for the constant.
        :rtype: float
        """
        return 4.0 * math.pi**2 * sum(n * n for n in self.terms[0].frequencies)

    def evaluate(self, x1: np.ndarray, x2: np.ndarray, x3: np.ndarray) -> np.ndarray:
        """Evaluate on broadcastable coordinate arrays.

        :param x1: First coordinate.
        :type x1: np.ndarray
        :param x2: Second coordinate.
        :type x2: np.ndarray
        :param x3: Third coordinate.
        :type x3: np.ndarray
        :return: Element values.
        :rtype: np.ndarray
        """
        return sum(t.evaluate(x1, x2, x3) for t in self.terms)

    def eval_element(self, x: tuple[float, float, float]) -> float:
        """Evaluate at one point of [0, 1)^3.

        :param x: The point.
        :type x: tuple[float, float, float]
        :return: Element value.
        :rtype: float
        """
        return float(self.evaluate(*(np.asarray(c) for c in x)))

    def sort_key(self) -> tuple:
        """Deterministic ordering: case, then frequencies, selectors and signs."""
        return (
            CASE_RANK[self.case],
            tuple((t.frequencies, t.js, -t.coefficient) for t in self.terms),
        )

    def as_equivariant_field(self) -> EquivariantField:
        """Write a Case 1 element as Re(f(x2, x3) e^{2 pi i m1 x1}).

        With g = f_{j2} f_{j3} and h = f_{1-j2} f_{1-j3} the element equals
        Re(-i (g +- i h) e^{2 pi i m1 x1}), a weight -m1 field on the
        (x2, x3) torus with fiber coordinate theta = 2 pi x1.

        :return: The equivariant field.
        :rtype: EquivariantField
        """
        if self.case is not CaseTag.CASE1:
            raise ValueError(f"Only Case1 elements are fiberwise exponential, not {self.case.value}.")
        first, second = self.terms
        sign = second.coefficient
        (_, g2, g3), (_, h2, h3) = first.factors, second.factors

        def base(x2: np.ndarray, x3: np.ndarray) -> np.ndarray:
            g = trig_factor(g2.j, g2.freq, x2) * trig_factor(g3.j, g3.freq, x3)
            h = trig_factor(h2.j, h2.freq, x2) * trig_factor(h3.j, h3.freq, x3)
            return -1j * (g + 1j * sign * h)

        return EquivariantField(weight=-self.frequencies[0], base=base, chart_id=TORUS2)

    def to_export(self, shared_eigenvalue: bool = False) -> dict:
        """JSON-ready description {case, coeffs, factors, eigenvalue}.

        :param shared_eigenvalue: Whether another frequency multiset shares
            the eigenvalue.
        :type shared_eigenvalue: bool
        :return: Export record.
        :rtype: dict
        """
        return {
            "case": self.case.value,
            "frequencies": list(self.frequencies),
            "coeffs": [t.coefficient for t in self.terms],
            "factors": [[[f.j, f.freq] for f in t.factors] for t in self.terms],
            "eigenvalue": self.eigenvalue(),
            "shared_eigenvalue": shared_eigenvalue,
        }


class TorusBasis:
    """Enumerate and check the eigenbasis up to a maximal frequency."""

    @staticmethod
    def _case1(max_freq: int) -> list[TorusBasisElement]:
        elements = []
        for m in product(range(1, max_freq + 1), repeat=3):
            for j2, j3, sign in product((0, 1), (0, 1), (1.0, -1.0)):
                terms = [
                    TorusTerm.build(1.0, {0: (0, m[0]), 1: (j2, m[1]), 2: (j3, m[2])}),
                    TorusTerm.build(sign, {0: (1, m[0]), 1: (1 - j2, m[1]), 2: (1 - j3, m[2])}),
                ]
                elements.append(TorusBasisElement(case=CaseTag.CASE1, frequencies=m, terms=terms))
        return elements

    @staticmethod
    def _case2(max_freq: int) -> list[TorusBasisElement]:
        elements = []
        for p, q in combinations(range(1, max_freq + 1), 2):
            for a in range(3):
                b, c = (axis for axis in range(3) if axis != a)
                for j, k, sign in product((0, 1), (0, 1), (1.0, -1.0)):
                    terms = [
                        TorusTerm.build(1.0, {a: (j, p), b: (k, q)}),
                        TorusTerm.build(sign, {a: (1 - j, p), c: (k, q)}),
                    ]
                    elements.append(
                        TorusBasisElement(
                            case=CaseTag.CASE2, frequencies=terms[0].frequencies, terms=terms
                        )
                    )
        return elements

    @staticmethod
    def _case3(max_freq: int) -> list[TorusBasisElement]:
        elements = []
        for m in range(1, max_freq + 1):
            for first, second in EQUAL_PAIR_ROWS:
                for sign in (1.0, -1.0):
                    terms = [
                        TorusTerm.build(1.0, {axis: (j, m) for axis, j in first.items()}),
                        TorusTerm.build(sign, {axis: (j, m) for axis, j in second.items()}),
                    ]
                    elements.append(
                        TorusBasisElement(
                            case=CaseTag.CASE3, frequencies=terms[0].frequencies, terms=terms
                        )
                    )
        return elements

    @staticmethod
    def _case4(max_freq: int) -> list[TorusBasisElement]:
        elements = []
        for m in range(1, max_freq + 1):
            for a, b, c in SINGLE_AXIS_ROWS:
                for j in (0, 1):
                    terms = [
                        TorusTerm.build(1.0, {a: (j, m)}),
                        TorusTerm.build(1.0, {b: (j, m)}),
                        TorusTerm.build(-0.5, {c: (j, m)}),
                    ]
                    elements.append(
                        TorusBasisElement(
                            case=CaseTag.CASE4, frequencies=terms[0].frequencies, terms=terms
                        )
                    )
        return elements

    @classmethod
    def enumerate_basis(cls, max_freq: int) -> list[TorusBasisElement]:
        """All basis elements with every frequency at most ``max_freq``.

        :param max_freq: Maximal frequency, at least 1.
        :type max_freq: int
        :return: Elements ordered by case, then lexicographically; the
            constant comes last.
        :rtype: list[TorusBasisElement]
        """
        if max_freq < 1:
            raise ValueError(f"max_freq must be at least 1, got {max_freq}.")

        elements = (
            cls._case1(max_freq) + cls._case2(max_freq) + cls._case3(max_freq) + cls._case4(max_freq)
        )
        constant = TorusBasisElement(
            case=CaseTag.CONSTANT,
            frequencies=(0, 0, 0),
            terms=[TorusTerm.build(1.0, {})],
        )
        return sorted(elements, key=TorusBasisElement.sort_key) + [constant]

    @staticmethod
    def gram_matrix(
        elements: list[TorusBasisElement], n_quad: int, normalize: bool = False
    ) -> np.ndarray:
        """Pairwise L^2 inner products over the unit-volume torus.

        The uniform (trapezoidal) rule is exact for these trigonometric
        polynomials once n_quad >= 4 * max_freq.

        :param elements: Elements to compare.
        :type elements: list[TorusBasisElement]
        :param n_quad: Quadrature nodes per axis.
        :type n_quad: int
        :param normalize: Rescale every element to unit norm first.
        :type normalize: bool
        :return: Symmetric matrix of inner products.
        :rtype: np.ndarray
        :raises QuadratureError: If n_quad is too small.
        """
        max_freq = max(e.max_freq for e in elements)
        if n_quad < 4 * max_freq:
            raise QuadratureError(
                f"n_quad={n_quad} is below 4 * max_freq = {4 * max_freq}; quadrature would alias."
            )

        nodes = np.arange(n_quad) / n_quad
        x1, x2, x3 = nodes[:, None, None], nodes[None, :, None], nodes[None, None, :]
        samples = np.stack(
            [np.broadcast_to(e.evaluate(x1, x2, x3), (n_quad,) * 3).ravel() for e in elements]
        )
        gram = samples @ samples.T / n_quad**3
        if normalize:
            scale = 1.0 / np.sqrt(np.diag(gram))
            gram = gram * scale[:, None] * scale[None, :]
        return gram

    @staticmethod
    def shared_eigenvalues(elements: list[TorusBasisElement]) -> set[int]:
        """Squared frequency norms reached by more than one frequency multiset.

        :param elements: Enumerated elements.
        :type elements: list[TorusBasisElement]
        :return: The shared values of m1^2 + m2^2 + m3^2.
        :rtype: set[int]
        """
        multisets: dict[int, set[tuple[int, ...]]] = defaultdict(set)
        for e in elements:
            for t in e.terms:
                multisets[sum(n * n for n in t.frequencies)].add(tuple(sorted(t.frequencies)))
        return {norm for norm, found in multisets.items() if len(found) > 1}

    @classmethod
    def export(cls, elements: list[TorusBasisElement]) -> list[dict]:
        """JSON-ready records flagging eigenvalues shared across multisets.

        :param elements: Enumerated elements.
        :type elements: list[TorusBasisElement]
        :return: Export records in element order.
        :rtype: list[dict]
        """
        shared = cls.shared_eigenvalues(elements)
        return [
            e.to_export(sum(n * n for n in e.frequencies) in shared) for e in elements
        ]


class Case4Zero(BaseModel):
    """A point (x, y) with e^{ix} = -1/2 cos y + (3/2) i sin y.

    :ivar x: Solution angle.
    :ivar y: Angle with sin^2 y = 3/8.
    :ivar target: The right-hand side value.
    """

    x: float
    y: float
    target: complex


def case4_regular_zero(y: Optional[float] = None) -> Case4Zero:
    """Solve e^{ix} = -1/2 cos y + (3/2) i sin y with sin^2 y = 3/8.

    The right-hand side has squared modulus 1/4 + 2 sin^2 y, which is 1
    exactly when sin^2 y = 3/8.

    :param y: Angle to use; defaults to arcsin(sqrt(3/8)).
    :type y: Optional[float]
    :return: The solution.
    :rtype: Case4Zero
    """
    if y is None:
        y = math.asin(math.sqrt(3.0 / 8.0))
    target = complex(-0.5 * math.cos(y), 1.5 * math.sin(y))
    return Case4Zero(x=math.atan2(target.imag, target.real), y=y, target=target)
