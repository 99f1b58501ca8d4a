"""End-to-end certification of one family instance: build, certify, compare."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateGraph, DimensionTooLarge, NotRegular, NotStronglyRegular, TooLarge
from .families import (
    Family,
    build_family,
    family_params,
    family_srg,
    parse_family,
    predict_verdict,
)
from .geometry import MAX_POINTS
from .graphs import MAX_VERTICES, NU_BUILD_Q, Graph
from .spectral import (
    NUMERIC_MAX_N,
    Certificate,
    SrgParams,
    Spectrum,
    exact_spectrum,
    numeric_spectrum,
    ramanujan_verdict,
    srg_params,
    srg_spectrum,
    verify_srg_identity,
)

CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"


def ambient_points(family: Family, m: int, q: int) -> int:
    if family in (Family.NO_PLUS, Family.NO_MINUS):
        N, order = 2 * m - 1, 2
    elif family is Family.NO_ODD:
        N, order = 2 * m, 2
    else:
        N, order = m - 1, q * q
    return (order ** (N + 1) - 1) // (order - 1)


def is_buildable(family: Family | str, m: int, q: int = 2, max_n: int = MAX_VERTICES) -> bool:
    family = parse_family(family)
    if family is Family.NU and q not in NU_BUILD_Q:
        return False
    if family is not Family.NU and q != 2:
        return False
    if ambient_points(family, m, q) > MAX_POINTS:
        return False
    return family_params(family, m, q).n <= max_n


def check_guards(family: Family, m: int, q: int) -> None:
    """Raise the resource-guard error a construction would hit, before building."""
    pts = ambient_points(family, m, q)
    if pts > MAX_POINTS:
        raise DimensionTooLarge(f"ambient space has {pts} points, above the guard of {MAX_POINTS}")
    n = family_params(family, m, q).n
    if n > MAX_VERTICES:
        raise TooLarge(f"{n} vertices exceeds the construction guard of {MAX_VERTICES}")


def spectra_agree(exact: Spectrum, numeric: Spectrum, tol: float = 1e-6) -> bool:
    a = np.sort(exact.flat())
    b = np.sort(numeric.flat())
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


@dataclass
class CertifiedInstance:
    graph: Graph
    certificate: Certificate
    problems: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.problems


def certify(family: Family | str, m: int, q: int = 2, numeric: bool = True) -> CertifiedInstance:
    """Build the graph and cross-check every computed quantity against the closed forms."""
    family = parse_family(family)
    expected = family_params(family, m, q)
    check_guards(family, m, q)
    G = build_family(family, m, q)
    problems: list[str] = []
    d = G.regular_degree()
    if (G.n, d) != (expected.n, expected.d):
        problems.append(f"(n, d) = {(G.n, d)} but formulas give {(expected.n, expected.d)}")

    params: SrgParams | None = None
    identity = False
    if not expected.degenerate:
        try:
            params = srg_params(G)
        except (NotRegular, NotStronglyRegular, DegenerateGraph) as exc:
            problems.append(f"not certified strongly regular: {exc}")
    if params is None:
        spectrum, _ = exact_spectrum(G)
    else:
        identity = verify_srg_identity(G, params)
        if not identity:
            problems.append("A^2 identity fails")
        if params != family_srg(family, m, q):
            problems.append(f"SRG parameters {params.astuple()} differ from the closed forms")
        spectrum = srg_spectrum(params)
        got = sorted(v for v, _ in spectrum.entries[1:])
        want = sorted(set(expected.eigenvalues()))
        if got != want:
            problems.append(f"eigenvalues {got} differ from the closed forms {want}")
    if numeric and G.n <= NUMERIC_MAX_N and not spectra_agree(spectrum, numeric_spectrum(G)):
        problems.append("numeric spectrum disagrees with the exact spectrum")

    verdict = ramanujan_verdict(G, spectrum)
    predicted = predict_verdict(family, m, q)
    if verdict.cls is not predicted:
        problems.append(f"verdict {verdict.cls.value} but closed forms predict {predicted.value}")

    cert = Certificate(
        family=family.value, m=m, q=q, n=G.n, d=d if d is not None else -1,
        srg=params, spectrum=spectrum, verdict=verdict, identity_verified=identity,
        status=INCONSISTENT if problems else CONSISTENT,
    )
    return CertifiedInstance(G, cert, problems)
