from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polargraphs.errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EqualPoints,
    HermitianNotPolarizable,
    InvalidForm,
    NotParabolicBinary,
)
from polargraphs.field import field_make
from polargraphs.geometry import (
    FormKind,
    LineKind,
    classify_line,
    enumerate_points,
    eval_form,
    is_isotropic,
    line_points,
    make_form,
    nucleus,
    polar_form,
    polar_tag,
    projective_space,
)

GF2 = field_make(2, 1)
GF4 = field_make(2, 2)
GF9 = field_make(3, 2)


def test_point_counts():
    assert len(enumerate_points(GF2, 3)) == 15
    assert len(enumerate_points(GF4, 2)) == 21
    pts = enumerate_points(GF2, 4)
    assert len(pts) == 31
    assert pts[0].coords == (1, 0, 0, 0, 0)


@pytest.mark.parametrize("field,N", [(GF2, 4), (GF4, 2), (GF9, 2), (field_make(5, 1), 2)])
def test_points_canonical_distinct_and_indexed(field, N):
    space = projective_space(field, N)
    pts = space.points()
    seen = set()
    for k, P in enumerate(pts):
        assert P.index == k
        lead = next(c for c in P.coords if c)
        assert lead == 1
        assert space.index_of(P.coords) == k
        seen.add(P.coords)
    assert len(seen) == (field.order ** (N + 1) - 1) // (field.order - 1)


def test_index_of_accepts_scalar_multiples():
    space = projective_space(GF9, 2)
    P = space.points()[17]
    scaled = [GF9.mul(5, c) for c in P.coords]
    assert space.index_of(scaled) == 17


def test_line_points_small():
    pts = enumerate_points(GF2, 2)
    P, Q = (p for p in pts if p.coords in {(1, 0, 0), (0, 1, 0)})
    assert {p.coords for p in line_points(P, Q)} == {(1, 0, 0), (0, 1, 0), (1, 1, 0)}


def test_line_points_size_and_collinearity():
    pts = enumerate_points(GF9, 2)
    line = line_points(pts[3], pts[40])
    assert len(line) == 10
    assert len({p.index for p in line}) == 10


def test_line_errors():
    a = enumerate_points(GF2, 2)
    b = enumerate_points(GF2, 3)
    with pytest.raises(EqualPoints):
        line_points(a[1], a[1])
    with pytest.raises(DimensionMismatch):
        line_points(a[0], b[1])


def test_dimension_guard():
    with pytest.raises(DimensionTooLarge):
        enumerate_points(GF2, 20)


def test_hyperbolic_examples():
    form = make_form("hyperbolic", GF2, 3)
    assert eval_form(form, (1, 1, 0, 0)) == 1
    assert not is_isotropic(form, (1, 1, 0, 0))
    # Q(u+v) - Q(u) - Q(v) with u+v = (1,1,1,1): 0 - 1 - 1 = 0 mod 2
    assert polar_form(form, (1, 1, 0, 0), (0, 0, 1, 1)) == 0


def test_symplectic_first_pair():
    form = make_form("symplectic", GF2, 3)
    assert polar_form(form, (1, 0, 0, 0), (0, 1, 0, 0)) == 1


@pytest.mark.parametrize("kind,N", [("hyperbolic", 5), ("elliptic", 5), ("parabolic", 4)])
def test_polar_form_alternating_in_char_two(kind, N):
    form = make_form(kind, GF2, N)
    for P in enumerate_points(GF2, N):
        assert polar_form(form, P, P) == 0


@pytest.mark.parametrize("N", [2, 4, 6])
def test_nucleus_of_parabolic(N):
    form = make_form("parabolic", GF2, N)
    assert nucleus(form).coords == (1,) + (0,) * N


def test_nucleus_lies_on_tangent_lines_only():
    form = make_form("parabolic", GF2, 4)
    Nuc = nucleus(form)
    assert not is_isotropic(form, Nuc)
    for P in enumerate_points(GF2, 4):
        if P.index != Nuc.index:
            assert classify_line(form, Nuc, P).kind is LineKind.TANGENT


def test_nucleus_errors():
    with pytest.raises(NotParabolicBinary):
        nucleus(make_form("hyperbolic", GF2, 3))
    with pytest.raises(NotParabolicBinary):
        nucleus(make_form("parabolic", field_make(3, 1), 2))


def test_hermitian_not_polarizable():
    form = make_form("hermitian", GF4, 2)
    with pytest.raises(HermitianNotPolarizable):
        polar_form(form, (1, 0, 0), (0, 1, 0))


def test_form_parity_errors():
    with pytest.raises(InvalidForm):
        make_form("hyperbolic", GF2, 4)
    with pytest.raises(InvalidForm):
        make_form("parabolic", GF2, 3)
    with pytest.raises(InvalidForm):
        make_form("hermitian", GF2, 2)


def _hermitian_norm_oracle(F, coords):
    # x^(q+1) computed by repeated multiplication, not via the conjugation table
    total = 0
    q = int(round(F.order ** 0.5))
    for c in coords:
        total = F.add(total, F.pow(c, q + 1))
    return total


def test_hermitian_tangent_line_in_plane():
    form = make_form("hermitian", GF4, 2)
    pts = enumerate_points(GF4, 2)
    non_iso = [P for P in pts if _hermitian_norm_oracle(GF4, P.coords) != 0]
    found = False
    for P in non_iso:
        for Q in non_iso:
            if Q.index <= P.index:
                continue
            line = line_points(P, Q)
            count = sum(_hermitian_norm_oracle(GF4, R.coords) == 0 for R in line)
            cls = classify_line(form, P, Q)
            assert cls.isotropic_count == count
            found |= count == 1 and cls.kind is LineKind.TANGENT
    assert found


def test_hermitian_projective_line_is_secant():
    form = make_form("hermitian", GF4, 1)
    pts = enumerate_points(GF4, 1)
    cls = classify_line(form, pts[0], pts[1])
    assert cls.kind is LineKind.SECANT and cls.isotropic_count == 3


def _variety_size(kind, q, N):
    if kind == "hyperbolic":
        m = (N + 1) // 2
        return (q ** m - 1) * (q ** (m - 1) + 1) // (q - 1)
    if kind == "elliptic":
        m = (N + 1) // 2
        return (q ** m + 1) * (q ** (m - 1) - 1) // (q - 1)
    if kind == "parabolic":
        return (q ** N - 1) // (q - 1)
    r = int(round(q ** 0.5))
    return (r ** (N + 1) - (-1) ** (N + 1)) * (r ** N - (-1) ** N) // (q - 1)


@pytest.mark.parametrize("kind,field,N", [
    ("hyperbolic", GF2, 3), ("hyperbolic", GF2, 7), ("hyperbolic", GF2, 11),
    ("elliptic", GF2, 3), ("elliptic", GF2, 9), ("elliptic", field_make(3, 1), 5),
    ("parabolic", GF2, 6), ("parabolic", GF2, 12), ("parabolic", field_make(5, 1), 4),
    ("hermitian", GF4, 2), ("hermitian", GF4, 5), ("hermitian", GF9, 3),
])
def test_variety_sizes_match_classical_counts(kind, field, N):
    form = make_form(kind, field, N)
    assert int(form.isotropic_mask().sum()) == _variety_size(kind, field.order, N)


def test_polar_tags():
    cases = [
        ("hyperbolic", GF2, 5, 3, Fraction(0)),
        ("parabolic", GF2, 4, 2, Fraction(1)),
        ("symplectic", GF2, 3, 2, Fraction(1)),
        ("elliptic", GF2, 5, 2, Fraction(2)),
        ("hermitian", GF4, 2, 1, Fraction(3, 2)),
        ("hermitian", GF4, 3, 2, Fraction(1, 2)),
    ]
    for kind, F, N, rank, e in cases:
        tag = polar_tag(make_form(kind, F, N))
        assert (tag.rank, tag.type_param) == (rank, e)


def test_form_kind_enum_values():
    assert {k.value for k in FormKind} == {"hyperbolic", "elliptic", "parabolic", "hermitian", "symplectic"}


SPACE = projective_space(GF2, 5)
FORMS = [make_form(k, GF2, 5) for k in ("hyperbolic", "elliptic", "symplectic")]
point_index = st.integers(min_value=0, max_value=len(SPACE) - 1)


@settings(max_examples=200, deadline=None)
@given(point_index, point_index, st.sampled_from(FORMS))
def test_polar_form_symmetric(i, j, form):
    P, Q = SPACE.point(i), SPACE.point(j)
    assert polar_form(form, P, Q) == polar_form(form, Q, P)


@settings(max_examples=200, deadline=None)
@given(point_index, point_index, st.sampled_from(FORMS[:2]))
def test_polar_form_bilinear_in_char_two(i, j, form):
    u = np.array(SPACE.point(i).coords)
    v = np.array(SPACE.point(j).coords)
    lhs = eval_form(form, tuple((u + v) % 2)) if (u + v).any() else 0
    rhs = (eval_form(form, tuple(u)) + eval_form(form, tuple(v)) + polar_form(form, tuple(u), tuple(v))) % 2
    assert lhs == rhs


HSPACE = projective_space(GF9, 2)
HFORM = make_form("hermitian", GF9, 2)
hpoint = st.integers(min_value=0, max_value=len(HSPACE) - 1)


@settings(max_examples=200, deadline=None)
@given(hpoint, hpoint, st.integers(min_value=0, max_value=9))
def test_classify_line_invariant_under_swap_and_respan(i, j, k):
    if i == j:
        return
    P, Q = HSPACE.point(i), HSPACE.point(j)
    base = classify_line(HFORM, P, Q)
    assert classify_line(HFORM, Q, P) == base
    line = line_points(P, Q)
    R = line[k]
    if R.index != P.index:
        assert classify_line(HFORM, P, R) == base
