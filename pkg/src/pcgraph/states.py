"""Exact sparse simulation of the graph-encoded states.

States live on n sites of local dimension d and are stored as a map
from digit strings (site 1 is the first character) to complex
amplitudes.  The encoded states have at most p + 1 + |B-terms| nonzero
amplitudes, so the sparse map handles dozens of sites without touching
a dense 2^n vector.

Digit 0 encodes the Z eigenvalue +1 ("Z_i = 1"); for qudits the Z
eigenvalues are the d-th roots of unity omega^digit.  The shift
observable X maps |m> to |m-1 mod d>, which reduces to the usual Pauli
X for qubits.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ResourceLimitError, StateConditionError
from .graph import PCG

NORM_TOL = 1e-9
PRUNE_TOL = 1e-15


def omega(d: int) -> complex:
    """Primitive d-th root of unity exp(2 pi i / d)."""
    return cmath.exp(2j * math.pi / d)


def basis_key(n: int, ones: Iterable[int], digit: int = 1) -> str:
    """Digit string with ``digit`` at the listed 1-based sites, 0 elsewhere."""
    chars = ["0"] * n
    for v in ones:
        chars[v - 1] = str(digit)
    return "".join(chars)


@dataclass(frozen=True)
class SparseState:
    """Immutable sparse state vector; amplitudes keyed by digit string."""

    n: int
    d: int
    amplitudes: dict[str, complex]

    @classmethod
    def from_amplitudes(
        cls,
        n: int,
        amps: Mapping[str, complex],
        d: int = 2,
        normalize: bool = False,
    ) -> "SparseState":
        if n < 1:
            raise ValueError("site count must be at least 1")
        if d < 2:
            raise ValueError("local dimension must be at least 2")
        cleaned: dict[str, complex] = {}
        for key, amp in amps.items():
            if len(key) != n or any(not c.isdigit() or int(c) >= d for c in key):
                raise ValueError(f"basis key {key!r} is not {n} digits below {d}")
            if abs(amp) >= PRUNE_TOL:
                cleaned[key] = complex(amp)
        norm2 = sum(abs(a) ** 2 for a in cleaned.values())
        if normalize:
            if norm2 == 0:
                raise ValueError("cannot normalize the zero state")
            scale = 1 / math.sqrt(norm2)
            cleaned = {k: a * scale for k, a in cleaned.items()}
        elif abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 = {norm2} is not 1 within {NORM_TOL}")
        return cls(n, d, cleaned)

    def amplitude(self, key: str) -> complex:
        return self.amplitudes.get(key, 0j)

    def norm_squared(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def inner(self, other: "SparseState") -> complex:
        """<self|other> over the shared basis."""
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("states live on different site structures")
        small, big = self.amplitudes, other.amplitudes
        return sum(small[k].conjugate() * big[k] for k in small.keys() & big.keys())


@dataclass(frozen=True)
class BTerm:
    """One orthogonal-complement term: vertex set T with coefficient lambda."""

    vertices: tuple[int, ...]
    lam: complex

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "lam", complex(self.lam))


def _check_b_terms(pcg: PCG, b_terms: Sequence[BTerm]) -> None:
    seen = set()
    for s, term in enumerate(b_terms):
        if not term.vertices:
            raise StateConditionError(f"b-term #{s} is empty")
        if term.vertices[-1] > pcg.n:
            raise StateConditionError(f"b-term #{s} {term.vertices} exceeds site count")
        if term.vertices in seen:
            raise StateConditionError(f"b-term #{s} repeats the pattern {term.vertices}")
        seen.add(term.vertices)
        for r, e in enumerate(pcg.edges):
            # T_s must meet the complement of every edge, otherwise the
            # term survives that edge's conditioning and breaks certainty.
            if set(term.vertices) <= set(e.vertices):
                raise StateConditionError(
                    f"b-term #{s} {set(term.vertices)} lies inside edge #{r} "
                    f"{set(e.vertices)}"
                )
    if b_terms:
        weight = sum(abs(t.lam) ** 2 for t in b_terms)
        if abs(weight - 1.0) > NORM_TOL:
            raise StateConditionError(f"b-term weights sum to {weight}, expected 1")


def build_state(pcg: PCG, alpha: complex = 1.0, b_terms: Sequence[BTerm] = ()) -> SparseState:
    """Construct the n-qubit state encoding ``pcg``.

    The graph component puts amplitude alpha/sqrt(p+1) on |0...0> and
    -alpha*theta_i/sqrt(p+1) on each edge pattern; the optional
    orthogonal component adds beta*lambda_s on each b-term pattern with
    beta = sqrt(1-|alpha|^2) taken real and non-negative.
    """
    a = complex(alpha)
    mag = abs(a)
    if mag < PRUNE_TOL:
        raise StateConditionError("alpha must be nonzero")
    if mag > 1 + NORM_TOL:
        raise StateConditionError(f"|alpha| = {mag} exceeds 1")
    b_terms = tuple(b_terms)
    if not b_terms and abs(mag - 1.0) > NORM_TOL:
        raise StateConditionError("|alpha| < 1 needs b-terms to complete the state")
    _check_b_terms(pcg, b_terms)
    scale = a / math.sqrt(pcg.p + 1)
    amps: dict[str, complex] = {basis_key(pcg.n, ()): scale}
    for e in pcg.edges:
        key = basis_key(pcg.n, e.vertices)
        if key in amps:
            raise StateConditionError(f"duplicate edge pattern {set(e.vertices)}")
        amps[key] = -e.theta * scale
    beta = math.sqrt(max(0.0, 1.0 - mag * mag))
    for term in b_terms:
        amps[basis_key(pcg.n, term.vertices)] = beta * term.lam
    return SparseState.from_amplitudes(pcg.n, amps, d=2)


def project_z(
    state: SparseState, assignment: Mapping[int, int]
) -> tuple[float, SparseState | None]:
    """Condition on Z outcomes: returns (probability, renormalized state).

    ``assignment`` maps 1-based sites to observed digits.  A zero
    probability returns None for the post state.
    """
    for site, digit in assignment.items():
        if not 1 <= site <= state.n:
            raise ValueError(f"site {site} out of range 1..{state.n}")
        if not 0 <= digit < state.d:
            raise ValueError(f"digit {digit} out of range for d={state.d}")
    matching = {
        k: a
        for k, a in state.amplitudes.items()
        if all(int(k[site - 1]) == digit for site, digit in assignment.items())
    }
    prob = sum(abs(a) ** 2 for a in matching.values())
    if prob <= 0.0:
        return 0.0, None
    scale = 1 / math.sqrt(prob)
    post = SparseState.from_amplitudes(
        state.n, {k: a * scale for k, a in matching.items()}, d=state.d
    )
    return prob, post


def _apply_shift(state_amps: dict[str, complex], sites: frozenset[int], d: int) -> dict[str, complex]:
    out: dict[str, complex] = {}
    for key, amp in state_amps.items():
        new_key = "".join(
            str((int(c) - 1) % d) if (i + 1) in sites else c for i, c in enumerate(key)
        )
        out[new_key] = out.get(new_key, 0j) + amp
    return out


def x_product_distribution(
    state: SparseState, sites: Iterable[int], basis: str = "X"
) -> dict[int, float]:
    """Exact outcome distribution of the product observable over ``sites``.

    The observable is the product of single-site shift operators (Pauli
    X for qubits); eigenvalues are omega^j and the returned map is
    keyed by the power j, so j=0 is +1 and j=1 is -1 when d=2.  Basis
    "Y" (qubits only) conjugates each measured site by diag(1, -i)
    before the same evaluation.
    """
    site_set = frozenset(sites)
    if not site_set:
        raise ValueError("site set must be nonempty")
    for s in site_set:
        if not 1 <= s <= state.n:
            raise ValueError(f"site {s} out of range 1..{state.n}")
    if basis not in ("X", "Y"):
        raise ValueError(f"basis must be X or Y, got {basis!r}")
    amps = dict(state.amplitudes)
    if basis == "Y":
        if state.d != 2:
            raise ValueError("Y basis is defined for qubits only")
        rotated = {}
        for key, amp in amps.items():
            ones = sum(1 for s in site_set if key[s - 1] == "1")
            rotated[key] = amp * (-1j) ** ones
        amps = rotated
    d = state.d
    w = omega(d)
    # Moments phi_m = <psi| W^m |psi> determine the spectral weights.
    moments: list[complex] = []
    current = amps
    for _ in range(d):
        moments.append(
            sum(amps[k].conjugate() * current[k] for k in amps.keys() & current.keys())
        )
        current = _apply_shift(current, site_set, d)
    dist: dict[int, float] = {}
    for j in range(d):
        val = sum(w ** (-j * m) * moments[m] for m in range(d)) / d
        if abs(val.imag) > 1e-9:
            raise AssertionError(f"non-real spectral weight {val}")
        dist[j] = max(0.0, val.real)
    return dist


def joint_z_probability(state: SparseState, sites: Iterable[int], digit: int = 0) -> float:
    """Probability that every listed site yields the given Z digit."""
    site_list = sorted(set(sites))
    for s in site_list:
        if not 1 <= s <= state.n:
            raise ValueError(f"site {s} out of range 1..{state.n}")
    if not 0 <= digit < state.d:
        raise ValueError(f"digit {digit} out of range for d={state.d}")
    return sum(
        abs(a) ** 2
        for k, a in state.amplitudes.items()
        if all(int(k[s - 1]) == digit for s in site_list)
    )


QUDIT_FAMILY_MAX_D = 7


def build_qudit_family(d: int) -> SparseState:
    """The (d+1)-site qudit state generalizing the minimal 3-qubit case.

    Amplitudes are 1/sqrt(1 + (d-1)(d+1)) on |0...0> and omega^c times
    that on every string holding digit c at all sites but one, for
    c = 1..d-1.  At d = 2 this is exactly the minimal triangle state.
    """
    if not 2 <= d <= QUDIT_FAMILY_MAX_D:
        raise ResourceLimitError(f"qudit family supports 2 <= d <= {QUDIT_FAMILY_MAX_D}")
    n = d + 1
    w = omega(d)
    scale = 1 / math.sqrt(1 + (d - 1) * (d + 1))
    amps: dict[str, complex] = {"0" * n: scale}
    for c in range(1, d):
        for zero_site in range(1, n + 1):
            key = "".join("0" if s == zero_site else str(c) for s in range(1, n + 1))
            amps[key] = (w ** c) * scale
    return SparseState.from_amplitudes(n, amps, d=d)


_PAULI_LETTERS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class PauliWord:
    """Tensor product of single-qubit Paulis with a global phase."""

    letters: tuple[str, ...]
    phase: complex = 1 + 0j

    def __post_init__(self):
        if any(l not in _PAULI_LETTERS for l in self.letters):
            raise ValueError(f"letters must be from {_PAULI_LETTERS}")
        if self.phase not in (1, -1, 1j, -1j):
            raise ValueError("phase must be one of +1, -1, +i, -i")
        object.__setattr__(self, "phase", complex(self.phase))

    @classmethod
    def from_sites(cls, n: int, letters: Mapping[int, str], phase: complex = 1) -> "PauliWord":
        word = ["I"] * n
        for site, letter in letters.items():
            if not 1 <= site <= n:
                raise ValueError(f"site {site} out of range 1..{n}")
            word[site - 1] = letter
        return cls(tuple(word), phase)

    @property
    def n(self) -> int:
        return len(self.letters)

    def apply(self, state: SparseState) -> SparseState:
        if state.d != 2:
            raise ValueError("Pauli words act on qubit states only")
        if state.n != self.n:
            raise ValueError(f"word on {self.n} sites applied to {state.n}-site state")
        out: dict[str, complex] = {}
        for key, amp in state.amplitudes.items():
            coeff = self.phase * amp
            chars = list(key)
            for i, letter in enumerate(self.letters):
                bit = chars[i] == "1"
                if letter == "X":
                    chars[i] = "0" if bit else "1"
                elif letter == "Y":
                    coeff *= -1j if bit else 1j
                    chars[i] = "0" if bit else "1"
                elif letter == "Z":
                    if bit:
                        coeff = -coeff
            new_key = "".join(chars)
            out[new_key] = out.get(new_key, 0j) + coeff
        return SparseState.from_amplitudes(self.n, out, d=2)


def pps_amplitude(
    pre_state: SparseState, post_state: SparseState, word: PauliWord, sign: int
) -> complex:
    """Transition amplitude <post| (I + sign*word)/2 |pre>.

    A magnitude below ~1e-12 certifies that the projected property never
    occurs between the pre- and post-selection.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if pre_state.d != 2 or post_state.d != 2:
        raise ValueError("pre/post-selection amplitudes are defined for qubits")
    if pre_state.n != post_state.n or pre_state.n != word.n:
        raise ValueError("pre state, post state, and word must share the site count")
    direct = post_state.inner(pre_state)
    through = post_state.inner(word.apply(pre_state))
    return (direct + sign * through) / 2


_QUBIT_CHARS = {
    "0": {"0": 1.0},
    "1": {"1": 1.0},
    "+": {"0": 1 / math.sqrt(2), "1": 1 / math.sqrt(2)},
    "-": {"0": 1 / math.sqrt(2), "1": -1 / math.sqrt(2)},
}


def qubit_product_state(spec: str) -> SparseState:
    """Product state from a character spec, e.g. "010" or "+-+"."""
    if not spec or any(c not in _QUBIT_CHARS for c in spec):
        raise ValueError(f"spec must be nonempty over {sorted(_QUBIT_CHARS)}, got {spec!r}")
    amps: dict[str, complex] = {"": 1.0}
    for c in spec:
        amps = {
            key + digit: amp * factor
            for key, amp in amps.items()
            for digit, factor in _QUBIT_CHARS[c].items()
        }
    return SparseState.from_amplitudes(len(spec), amps, d=2)


def sample_counts(state: SparseState, shots: int, seed: int | None = None) -> dict[str, int]:
    """Seeded demo sampler; certification never uses sampled statistics."""
    if shots < 1:
        raise ValueError("shots must be positive")
    rng = random.Random(seed)
    keys = sorted(state.amplitudes)
    weights = [abs(state.amplitudes[k]) ** 2 for k in keys]
    counts: dict[str, int] = {}
    for key in rng.choices(keys, weights=weights, k=shots):
        counts[key] = counts.get(key, 0) + 1
    return counts
