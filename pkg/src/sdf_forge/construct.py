"""Constructions of large square-difference-free sets, with certificates.

Three constructions live here:

  * ``bertrand_set``: multiples {p, 2p, ..., p^2} of a prime p chosen in
    [sqrt(n)/2, sqrt(n)]; no difference (j-i)p with j-i < p can be a square
    because it carries exactly one factor of p.
  * ``lift``: the modular lifting step. Given S square-difference free mod a
    squarefree m and X square-difference free mod m^(2k-2), the set
    Y = {m^2*x + m*z + b : x in X, z in 0..m-1, b in S} is square-difference
    free mod m^(2k) with |Y| = m*|S|*|X|.
  * ``iterate``: k applications of ``lift`` starting from {0} mod 1, giving
    (m*|S|)^k residues mod m^(2k) and the density exponent
    0.5*(1 + log_m |S|).

Certificates record what was built, how big it is, and whether it was
re-verified by brute force or is only guaranteed by the lifting argument.
Downstream consumers must not treat the two verification grades alike.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .residue import is_squarefree
from .verify import (
    IntegerSet,
    ResidueSet,
    ViolationError,
    check_sdf,
    check_sdf_mod,
)

# Brute-force verification cutoff: lifted sets with modulus above this are
# certified by the lemma only (the flag records which grade applies).
VERIFY_MODULUS_CUTOFF = 10**6

# check_sdf (difference-indexed) is still cheap for integer universes up to
# this bound; beyond it bertrand certificates fall back to the lemma grade.
VERIFY_UNIVERSE_CUTOFF = 10**8

# Moduli are kept inside the signed 64-bit range so that table lookups,
# file formats, and array code downstream stay exact.
MODULUS_RANGE_MAX = 2**63 - 1

BRUTE_FORCE_CHECKED = "brute_force_checked"
GUARANTEED_BY_LEMMA = "guaranteed_by_lemma"

# Known 12-element base set modulo 205 = 5 * 41.
BASE_205_MODULUS = 205
BASE_205_SET = (0, 2, 8, 14, 77, 79, 85, 96, 103, 109, 111, 181)


@dataclass(frozen=True)
class LiftParams:
    """Inputs of the lifting recursion: squarefree m, base set S, depth k."""

    m: int
    S: ResidueSet
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"recursion depth k={self.k}; need k >= 1")
        if self.S.modulus != self.m:
            raise ValueError(f"base set modulus {self.S.modulus} != m={self.m}")
        if not is_squarefree(self.m):
            raise ValueError(f"m={self.m} is not squarefree")
        violation = check_sdf_mod(self.S)
        if violation is not None:
            raise ViolationError(f"base set is not square-difference free mod {self.m}", violation)


@dataclass(frozen=True)
class ConstructionCertificate:
    """A constructed set plus provenance and verification grade.

    kind is one of 'bertrand', 'lift', 'base'; params is the LiftParams of a
    lift/base construction or the universe bound n of a bertrand one;
    verified is BRUTE_FORCE_CHECKED or GUARANTEED_BY_LEMMA; exponent is the
    density exponent 0.5*(1 + log_m |S|) where applicable (0.5 for the
    bertrand construction, None for an empty base set).
    """

    kind: str
    params: LiftParams | int | None
    result: ResidueSet | IntegerSet
    claimed_size: int
    verified: str
    exponent: float | None

    def __post_init__(self) -> None:
        if self.claimed_size != len(self.result.elements):
            raise ValueError(
                f"claimed size {self.claimed_size} != actual {len(self.result.elements)}"
            )


def exponent(m: int, s: int) -> float:
    """The density exponent 0.5 * (1 + log_m(s)).

    A base set of size s mod m lifts to sets of size n^exponent at the grid
    points n = m^(2k).
    """
    if m < 2:
        raise ValueError(f"m={m}; need m >= 2")
    if s < 1:
        raise ValueError(f"s={s}; need s >= 1")
    return 0.5 * (1.0 + math.log(s) / math.log(m))


def bertrand_set(n: int) -> ConstructionCertificate:
    """The multiples set {p, 2p, ..., p*p} inside [n], |A| = p >= sqrt(n)/2."""
    from .residue import bertrand_prime

    p = bertrand_prime(n)
    result = IntegerSet(elements=tuple(range(p, p * p + 1, p)), universe_bound=n)
    if n <= VERIFY_UNIVERSE_CUTOFF:
        violation = check_sdf(result, mode="indexed")
        if violation is not None:
            raise ViolationError("bertrand construction produced a violating set", violation)
        verified = BRUTE_FORCE_CHECKED
    else:
        verified = GUARANTEED_BY_LEMMA
    return ConstructionCertificate(
        kind="bertrand",
        params=n,
        result=result,
        claimed_size=p,
        verified=verified,
        exponent=0.5,
    )


def _lift_sets(m: int, S: tuple[int, ...], X: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Raw set algebra of one lifting step, without precondition checks.

    B = {m*z + b : z in 0..m-1, b in S} and Y = {m^2*x + s : x in X, s in B},
    reduced mod m^(2k). No reduction actually occurs for in-range inputs,
    which makes the (x, z, b) -> y decomposition injective.
    """
    mod_out = m ** (2 * k)
    B = [m * z + b for z in range(m) for b in S]
    return tuple((m * m * x + s) % mod_out for x in X for s in B)


def lift(S: ResidueSet, X: ResidueSet, k: int) -> ResidueSet:
    """One lifting step: combine S mod m with X mod m^(2k-2) into Y mod m^(2k).

    |Y| = m * |S| * |X| exactly. Preconditions (squarefree m, both inputs
    square-difference free, matching moduli) are enforced; oracle failures
    raise ViolationError carrying the witness.
    """
    m = S.modulus
    if k < 1:
        raise ValueError(f"k={k}; need k >= 1")
    if not is_squarefree(m):
        raise ValueError(f"m={m} is not squarefree")
    expected_x_mod = m ** (2 * k - 2)
    if X.modulus != expected_x_mod:
        raise ValueError(f"X has modulus {X.modulus}; lifting step k={k} needs m^(2k-2) = {expected_x_mod}")
    mod_out = m ** (2 * k)
    if mod_out > MODULUS_RANGE_MAX:
        raise OverflowError(f"target modulus {m}^{2 * k} exceeds the exact-integer range 2^63-1")
    violation = check_sdf_mod(S)
    if violation is not None:
        raise ViolationError(f"S is not square-difference free mod {m}", violation)
    violation = check_sdf_mod(X)
    if violation is not None:
        raise ViolationError(f"X is not square-difference free mod {X.modulus}", violation)
    elements = _lift_sets(m, S.elements, X.elements, k)
    lifted = ResidueSet(modulus=mod_out, elements=elements)
    if len(lifted) != m * len(S) * len(X):
        raise AssertionError(
            f"lift size {len(lifted)} != m*|S|*|X| = {m * len(S) * len(X)} (decomposition collided)"
        )
    return lifted


def iterate(params: LiftParams) -> ConstructionCertificate:
    """Apply the lifting step k times from the seed {0} mod 1.

    Yields (m*|S|)^k residues mod m^(2k). The result is re-verified by brute
    force whenever the final modulus is at most VERIFY_MODULUS_CUTOFF;
    larger moduli are certified by the lifting argument alone.
    """
    m, S, k = params.m, params.S, params.k
    final_mod = m ** (2 * k)
    if final_mod > MODULUS_RANGE_MAX:
        raise OverflowError(f"target modulus {m}^{2 * k} exceeds the exact-integer range 2^63-1")
    X = ResidueSet(modulus=1, elements=(0,))
    for depth in range(1, k + 1):
        X = lift(S, X, depth)
    claimed = (m * len(S)) ** k
    if len(X) != claimed:
        raise AssertionError(f"iterate size {len(X)} != (m|S|)^k = {claimed}")
    if final_mod <= VERIFY_MODULUS_CUTOFF:
        violation = check_sdf_mod(X)
        if violation is not None:
            raise ViolationError(f"lifted set failed verification mod {final_mod}", violation)
        verified = BRUTE_FORCE_CHECKED
    else:
        verified = GUARANTEED_BY_LEMMA
    return ConstructionCertificate(
        kind="lift",
        params=params,
        result=X,
        claimed_size=claimed,
        verified=verified,
        exponent=exponent(m, len(S)) if len(S) >= 1 else None,
    )


def base_certificate(S: ResidueSet) -> ConstructionCertificate:
    """Certificate for a depth-0 base set (verified against the oracle).

    params carries LiftParams when the set can seed the lifting recursion
    (squarefree modulus >= 2), else None.
    """
    violation = check_sdf_mod(S)
    if violation is not None:
        raise ViolationError(f"base set is not square-difference free mod {S.modulus}", violation)
    liftable = S.modulus >= 2 and is_squarefree(S.modulus)
    return ConstructionCertificate(
        kind="base",
        params=LiftParams(m=S.modulus, S=S, k=1) if liftable else None,
        result=S,
        claimed_size=len(S),
        verified=BRUTE_FORCE_CHECKED,
        exponent=exponent(S.modulus, len(S)) if S.modulus >= 2 and len(S) >= 1 else None,
    )


def paper_base() -> LiftParams:
    """The hard-coded 12-element base set mod 205, re-verified at load."""
    S = ResidueSet(modulus=BASE_205_MODULUS, elements=BASE_205_SET)
    return LiftParams(m=BASE_205_MODULUS, S=S, k=1)


# ---------------------------------------------------------------------------
# Certificate JSON: {kind, m, k, modulus, size, exponent, verified, elements}
# Canonical bytes: fixed key order, exponent printed with 15 significant
# digits, elements ascending on one line, LF newlines.
# ---------------------------------------------------------------------------


def _certificate_fields(cert: ConstructionCertificate) -> tuple[int | None, int | None, int]:
    """(m, k, modulus) triple for the JSON schema."""
    if cert.kind == "bertrand":
        # m records the prime the multiples set is built on (its first element).
        return int(cert.result.elements[0]), None, cert.result.universe_bound
    if cert.kind == "base":
        return cert.result.modulus, 0, cert.result.modulus
    params = cert.params
    assert isinstance(params, LiftParams)
    return params.m, params.k, cert.result.modulus


def certificate_to_json(cert: ConstructionCertificate) -> str:
    m, k, modulus = _certificate_fields(cert)
    exp_text = "null" if cert.exponent is None else f"{cert.exponent:.14e}"
    lines = [
        "{",
        f'  "kind": "{cert.kind}",',
        f'  "m": {json.dumps(m)},',
        f'  "k": {json.dumps(k)},',
        f'  "modulus": {modulus},',
        f'  "size": {cert.claimed_size},',
        f'  "exponent": {exp_text},',
        f'  "verified": "{cert.verified}",',
        f'  "elements": [{", ".join(str(e) for e in cert.result.elements)}]',
        "}",
    ]
    return "\n".join(lines) + "\n"


def write_certificate(path: str | Path, cert: ConstructionCertificate) -> None:
    Path(path).write_text(certificate_to_json(cert), encoding="ascii")


def read_certificate(path: str | Path) -> ConstructionCertificate:
    """Load a certificate JSON and rebuild the typed object."""
    return certificate_from_dict(json.loads(Path(path).read_text(encoding="ascii")))


def certificate_from_dict(data: dict) -> ConstructionCertificate:
    """Rebuild a certificate from its JSON dict.

    For lift kinds the base set is recovered from the elements themselves:
    every lifted element y = m^2*x + m*z + b reduces to its base residue
    b = y mod m, so S = {y mod m : y in Y}. Reconstructing LiftParams
    re-runs its invariants, which doubles as an integrity check on load.
    """
    kind = data["kind"]
    elements = tuple(int(e) for e in data["elements"])
    params: LiftParams | int | None
    if kind == "bertrand":
        result: ResidueSet | IntegerSet = IntegerSet(elements=elements, universe_bound=data["modulus"])
        params = int(data["modulus"])
    elif kind == "base":
        result = ResidueSet(modulus=data["modulus"], elements=elements)
        liftable = data["m"] >= 2 and is_squarefree(data["m"])
        params = LiftParams(m=data["m"], S=result, k=1) if liftable else None
    elif kind == "lift":
        result = ResidueSet(modulus=data["modulus"], elements=elements)
        m, k = int(data["m"]), int(data["k"])
        base = ResidueSet(modulus=m, elements=tuple(e % m for e in elements))
        params = LiftParams(m=m, S=base, k=k)
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return ConstructionCertificate(
        kind=kind,
        params=params,
        result=result,
        claimed_size=int(data["size"]),
        verified=data["verified"],
        exponent=None if data["exponent"] is None else float(data["exponent"]),
    )
