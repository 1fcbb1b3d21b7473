"""Adapted splitting data for a pair (3-manifold, boundary subsurface).

An adapted handlebody decomposition M = H1 u H2 with separating surface
U = H1 n H2 is recorded purely at the fundamental-group level: the free
ranks h1, h2, u, the rank g1 of the marked boundary subsurface, and the two
inclusion-induced homomorphisms pi_1(U) -> pi_1(H1), pi_1(U) -> pi_1(H2).
By convention the first g1 generators of pi_1(H1) are the marked-surface
generators, since H1 arises from a collar of that surface by adding
handles, splitting pi_1(H1) as the free product of pi_1 of the surface and
a free complement.

Any algebraically consistent data is accepted; whether it arises from an
actual 3-manifold with the stated boundary decomposition is the caller's
responsibility.  The invariant computations only consume the free-group
data.

Cohomology is contravariant, so the pullback maps b, c on first cohomology
are the transposes of the pi_1-level abelianizations.  That orientation of
the maps is fixed once here and reused by the invariant pipelines.

The codimension count is T = (h1 + h2 - u) - g1, the difference of Euler
characteristics of the marked surface and of M.  The numerical invariant
lives at T = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import GroupKind, special_unitary, unitary
from .intlinalg import INFINITE, IntMat, cokernel_order, kernel_basis, rank
from .words import (
    FreeHom,
    MalformedWordError,
    RankMismatchError,
    Word,
    abelianize,
    format_word,
    free_reduce,
    parse_word,
)

__all__ = [
    "AdaptedSplitting",
    "PairHomologyReport",
    "InvalidSplittingError",
    "DocumentError",
    "validate",
    "validation_warnings",
    "glue_matrix",
    "mayer_vietoris_matrix",
    "homology_of_M",
    "pair_cohomology",
    "stabilize",
    "assembled_word_map",
    "parse_splitting_document",
    "format_splitting_document",
]


class InvalidSplittingError(ValueError):
    """Operation applied to a splitting with validation violations."""

    def __init__(self, violations: list[str]):
        super().__init__("invalid splitting: " + "; ".join(violations))
        self.violations = violations


class DocumentError(ValueError):
    """Malformed splitting document."""


@dataclass(frozen=True)
class AdaptedSplitting:
    """Combinatorial encoding of an adapted handlebody decomposition.

    ``u_hat_genus`` is the genus of the capped-off separating surface; it
    is user-supplied data (defaulted to u) because it is not derivable from
    the free rank alone without boundary-circle information.
    ``orientation_reversed`` models replacing the manifold by its mirror.
    """

    h1: int
    h2: int
    u: int
    g1: int
    k_map: FreeHom
    l_map: FreeHom
    u_hat_genus: int | None = None
    orientation_reversed: bool = False

    def __post_init__(self):
        if self.u_hat_genus is None:
            object.__setattr__(self, "u_hat_genus", self.u)

    @property
    def T(self) -> int:
        return (self.h1 + self.h2 - self.u) - self.g1


def validate(s: AdaptedSplitting) -> list[str]:
    """Return the list of violations; an empty list means valid."""
    v: list[str] = []
    if s.h1 < 1:
        v.append(f"h1 must be positive, got {s.h1}")
    if s.h2 < 1:
        v.append(f"h2 must be positive, got {s.h2}")
    if s.u < 1:
        v.append(f"u must be positive, got {s.u}")
    if s.g1 < 0:
        v.append(f"g1 must be nonnegative, got {s.g1}")
    if s.g1 > s.h1:
        v.append(f"S1 generators exceed H1 rank (g1={s.g1} > h1={s.h1})")
    if s.k_map.source_rank != s.u:
        v.append(f"k_map source rank {s.k_map.source_rank} != u={s.u}")
    if s.k_map.target_rank != s.h1:
        v.append(f"k_map target rank {s.k_map.target_rank} != h1={s.h1}")
    if s.l_map.source_rank != s.u:
        v.append(f"l_map source rank {s.l_map.source_rank} != u={s.u}")
    if s.l_map.target_rank != s.h2:
        v.append(f"l_map target rank {s.l_map.target_rank} != h2={s.h2}")
    for name, hom in (("k_map", s.k_map), ("l_map", s.l_map)):
        for idx, w in enumerate(hom.images, start=1):
            if w.max_index() > hom.target_rank:
                v.append(f"{name} word {idx} uses out-of-range generator")
    if s.T < 0:
        v.append(f"negative codimension T={s.T}")
    if s.u_hat_genus is not None and s.u_hat_genus < 0:
        v.append(f"u_hat_genus must be nonnegative, got {s.u_hat_genus}")
    return v


def validation_warnings(s: AdaptedSplitting) -> list[str]:
    """Non-fatal oddities: odd positive T is flagged but not rejected."""
    w: list[str] = []
    if s.T > 0 and s.T % 2 == 1:
        w.append(f"odd positive codimension T={s.T}")
    return w


def _require_valid(s: AdaptedSplitting) -> None:
    violations = validate(s)
    if violations:
        raise InvalidSplittingError(violations)


def glue_matrix(s: AdaptedSplitting) -> IntMat:
    """The u x ((h1-g1)+h2) matrix of the glue map on first cohomology.

    The first h1-g1 columns are the pullback through U -> H1 restricted to
    the complement of the marked-surface generators; the last h2 columns
    are minus the pullback through U -> H2.  Square exactly when T == 0.
    """
    _require_valid(s)
    bt = abelianize(s.k_map).transpose()  # u x h1
    ct = abelianize(s.l_map).transpose()  # u x h2
    rows = []
    for i in range(s.u):
        row = [bt[i, c] for c in range(s.g1, s.h1)]
        row.extend(-ct[i, c] for c in range(s.h2))
        rows.append(row)
    return IntMat(rows, cols=(s.h1 - s.g1) + s.h2)


def mayer_vietoris_matrix(s: AdaptedSplitting) -> IntMat:
    """The u x (h1+h2) matrix of (b - c) on full first cohomology."""
    _require_valid(s)
    bt = abelianize(s.k_map).transpose()
    ct = abelianize(s.l_map).transpose()
    rows = []
    for i in range(s.u):
        row = list(bt.row(i))
        row.extend(-x for x in ct.row(i))
        rows.append(row)
    return IntMat(rows, cols=s.h1 + s.h2)


def homology_of_M(s: AdaptedSplitting):
    """First Betti number and |H^2| of the glued manifold.

    From the reduced Mayer-Vietoris sequence, H^1(M) is the kernel of
    (b - c) and H^2(M) its cokernel; returns (betti1, order or INFINITE).
    """
    bc = mayer_vietoris_matrix(s)
    return kernel_basis(bc).cols, cokernel_order(bc)


@dataclass(frozen=True)
class PairHomologyReport:
    """Homological summary of the pair (M, marked surface)."""

    betti1_M: int
    order_H2_M: object  # positive int or INFINITE
    order_H2_pair: object  # positive int or INFINITE
    restriction_iso: bool


def _restriction_matrix(s: AdaptedSplitting) -> IntMat:
    # Composite H^1(M) -> H^1(S1): kernel vectors of (b - c) projected to
    # the first g1 coordinates of the H1 block.
    bc = mayer_vietoris_matrix(s)
    kb = kernel_basis(bc)
    return IntMat(
        [[kb[r, c] for c in range(kb.cols)] for r in range(s.g1)],
        cols=kb.cols,
    )


def pair_cohomology(s: AdaptedSplitting) -> PairHomologyReport:
    """Compute |H^2| of the pair via the restriction-to-surface factorization.

    |H^2(pair)| = |H^2(M)| * |H^1(S1) / image of H^1(M)| when both factors
    are finite, INFINITE otherwise.  ``restriction_iso`` records whether
    the rational restriction H^1(M, Q) -> H^1(S1, Q) is an isomorphism.
    """
    _require_valid(s)
    betti1, order_h2 = homology_of_M(s)
    mi = _restriction_matrix(s)
    mi_rank = rank(mi)
    restriction_iso = betti1 == s.g1 and mi_rank == s.g1
    quotient = cokernel_order(mi)
    if order_h2 is INFINITE or quotient is INFINITE:
        order_pair = INFINITE
    else:
        order_pair = order_h2 * quotient
    return PairHomologyReport(
        betti1_M=betti1,
        order_H2_M=order_h2,
        order_H2_pair=order_pair,
        restriction_iso=restriction_iso,
    )


def stabilize(s: AdaptedSplitting) -> AdaptedSplitting:
    """Add a trivial handle: u, h1 and the capped genus each grow by one.

    The new separating-surface generator maps to the new H1 generator and
    to the identity in H2; all prior data is unchanged, so T is preserved.
    """
    _require_valid(s)
    new_k_images = tuple(s.k_map.images) + (Word(((s.h1 + 1, 1),)),)
    new_l_images = tuple(s.l_map.images) + (Word(),)
    return AdaptedSplitting(
        h1=s.h1 + 1,
        h2=s.h2,
        u=s.u + 1,
        g1=s.g1,
        k_map=FreeHom(s.u + 1, s.h1 + 1, new_k_images),
        l_map=FreeHom(s.u + 1, s.h2, new_l_images),
        u_hat_genus=s.u_hat_genus + 1,
        orientation_reversed=s.orientation_reversed,
    )


def assembled_word_map(s: AdaptedSplitting) -> FreeHom:
    """The word map whose degree computes the invariant.

    Source generators are those of pi_1(U); target generators are the
    h1-g1 free H1 generators followed by the h2 H2 generators.  Each U
    generator maps to (its H1 image with marked-surface letters deleted)
    times (its H2 image, re-indexed, inverted).  The abelianization of the
    result is the transpose of :func:`glue_matrix`.
    """
    _require_valid(s)
    free1 = s.h1 - s.g1
    images = []
    for i in range(s.u):
        letters = [
            (g - s.g1, e) for g, e in s.k_map.images[i].letters if g > s.g1
        ]
        l_word = s.l_map.images[i]
        letters.extend((g + free1, -e) for g, e in reversed(l_word.letters))
        images.append(free_reduce(letters))
    return FreeHom(s.u, free1 + s.h2, tuple(images))


# ---------------------------------------------------------------------------
# Splitting document format (the CLI input format).
#
# One self-contained text file per splitting: `key = value` lines, blank
# lines and `#` comments ignored.  Fields: n, group ("U" | "SU"), h1, h2,
# u, g1, optional u_hat_genus, optional orientation_reversed, and the two
# word lists k_map, l_map (words in the g-token syntax, separated by ';').
# ---------------------------------------------------------------------------

_REQUIRED_FIELDS = ("n", "group", "h1", "h2", "u", "g1", "k_map", "l_map")
_OPTIONAL_FIELDS = ("u_hat_genus", "orientation_reversed")


def _parse_word_list(value: str, expected: int, target_rank: int, field: str) -> FreeHom:
    # An empty chunk is the identity word, so `k_map =  ; g1` is two words.
    chunks = [] if expected == 0 else value.split(";")
    if expected == 0 and value.strip():
        raise DocumentError(f"{field} must be empty when u=0")
    words = []
    for chunk in chunks:
        try:
            words.append(parse_word(chunk))
        except MalformedWordError as exc:
            raise DocumentError(f"{field}: {exc}") from exc
    if len(words) != expected:
        raise DocumentError(
            f"{field} lists {len(words)} words, expected u={expected}"
        )
    try:
        return FreeHom(expected, target_rank, tuple(words))
    except (MalformedWordError, RankMismatchError) as exc:
        raise DocumentError(f"{field}: {exc}") from exc


def parse_splitting_document(text: str) -> tuple[AdaptedSplitting, GroupKind]:
    """Parse a splitting document; returns the splitting and the group kind."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DocumentError(f"line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in _REQUIRED_FIELDS and key not in _OPTIONAL_FIELDS:
            raise DocumentError(f"line {lineno}: unknown field {key!r}")
        if key in fields:
            raise DocumentError(f"line {lineno}: duplicate field {key!r}")
        fields[key] = value.strip()
    for key in _REQUIRED_FIELDS:
        if key not in fields:
            raise DocumentError(f"missing required field {key!r}")

    def int_field(key: str) -> int:
        try:
            return int(fields[key])
        except ValueError as exc:
            raise DocumentError(f"field {key!r} must be an integer") from exc

    group_text = fields["group"]
    if group_text not in ("U", "SU"):
        raise DocumentError(f"group must be 'U' or 'SU', got {group_text!r}")
    n = int_field("n")
    try:
        kind = unitary(n) if group_text == "U" else special_unitary(n)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc

    h1, h2, u, g1 = (int_field(k) for k in ("h1", "h2", "u", "g1"))
    u_hat = int_field("u_hat_genus") if "u_hat_genus" in fields else None
    reversed_flag = False
    if "orientation_reversed" in fields:
        flag = fields["orientation_reversed"]
        if flag not in ("true", "false"):
            raise DocumentError("orientation_reversed must be 'true' or 'false'")
        reversed_flag = flag == "true"

    k_map = _parse_word_list(fields["k_map"], u, h1, "k_map")
    l_map = _parse_word_list(fields["l_map"], u, h2, "l_map")
    splitting = AdaptedSplitting(
        h1=h1, h2=h2, u=u, g1=g1, k_map=k_map, l_map=l_map,
        u_hat_genus=u_hat, orientation_reversed=reversed_flag,
    )
    return splitting, kind


def format_splitting_document(s: AdaptedSplitting, kind: GroupKind) -> str:
    """Serialize back to the document format (inverse of the parser)."""
    lines = [
        f"n = {kind.n}",
        f"group = {kind.family.value}",
        f"h1 = {s.h1}",
        f"h2 = {s.h2}",
        f"u = {s.u}",
        f"g1 = {s.g1}",
        f"u_hat_genus = {s.u_hat_genus}",
        f"orientation_reversed = {'true' if s.orientation_reversed else 'false'}",
        "k_map = " + " ; ".join(format_word(w) for w in s.k_map.images),
        "l_map = " + " ; ".join(format_word(w) for w in s.l_map.images),
    ]
    return "\n".join(lines) + "\n"
