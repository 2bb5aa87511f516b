"""Exact arithmetic for groups of local similarities on the boundary of a
rooted d-ary tree: Thompson's groups F, T, V, their germ-decorated
relatives, canonical forms, the translated-inclusion length and cocycle,
and finite spaces with walls.
"""

from .words import (
    Alphabet,
    ClopenSet,
    Containment,
    Point,
    PrefixCode,
    Word,
    ball_contains,
    clopen_normalize,
    complement_balls,
    distance_exponent,
    is_prefix,
    proper_prefix_count,
)
from .structure import (
    Germ,
    SelfSimilarGroup,
    Similarity,
    Violation,
    germ_apply,
    germ_restrict,
    parse_automaton,
    sim_compose,
    sim_invert,
    sim_restrict,
    symmetric_group,
    trivial_group,
)
from .elements import (
    CanonicalElement,
    Row,
    SimTable,
    apply,
    compose,
    enumerate_gamma,
    expand_at,
    format_element,
    identity,
    invert,
    is_in_F,
    is_in_T,
    max_partition,
    parse_element,
    random_element,
    random_point,
    reduce,
    validate_table,
)
from .zipper import (
    AuditReport,
    AuditRow,
    EmbeddingClass,
    NowallsReport,
    SignedSupport,
    WallSystem,
    act_on_eclass,
    canonical_eclass,
    cocycle,
    cocycle_identity_defect,
    gz_member,
    incl_class,
    nowalls_demo,
    point_label,
    properness_audit,
    separating_walls,
    symdiff,
    wall_separation,
    z_member,
    zipper_length,
)
from .walls import (
    Move,
    MoveReport,
    WallsInstance,
    ZipperFromWalls,
    integer_line_instance,
    parse_walls_file,
    walls_to_zipper,
)
from .errors import (
    CompositionDomainError,
    IncompatibleElementsError,
    InvalidClassError,
    InvalidCodeError,
    InvalidWallError,
    LiteralParseError,
    LocalSimError,
    MalformedStructureError,
    MalformedWordError,
    NoSuchRowError,
    NotInvertibleError,
    UnsupportedStructureError,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AuditReport",
    "AuditRow",
    "CanonicalElement",
    "ClopenSet",
    "CompositionDomainError",
    "Containment",
    "EmbeddingClass",
    "Germ",
    "IncompatibleElementsError",
    "InvalidClassError",
    "InvalidCodeError",
    "InvalidWallError",
    "LiteralParseError",
    "LocalSimError",
    "MalformedStructureError",
    "MalformedWordError",
    "Move",
    "MoveReport",
    "NoSuchRowError",
    "NotInvertibleError",
    "NowallsReport",
    "Point",
    "PrefixCode",
    "Row",
    "SelfSimilarGroup",
    "SignedSupport",
    "SimTable",
    "Similarity",
    "UnsupportedStructureError",
    "Violation",
    "WallSystem",
    "WallsInstance",
    "Word",
    "ZipperFromWalls",
    "act_on_eclass",
    "apply",
    "ball_contains",
    "canonical_eclass",
    "clopen_normalize",
    "cocycle",
    "cocycle_identity_defect",
    "complement_balls",
    "compose",
    "distance_exponent",
    "enumerate_gamma",
    "expand_at",
    "format_element",
    "germ_apply",
    "germ_restrict",
    "gz_member",
    "identity",
    "incl_class",
    "integer_line_instance",
    "invert",
    "is_in_F",
    "is_in_T",
    "is_prefix",
    "max_partition",
    "nowalls_demo",
    "parse_automaton",
    "parse_element",
    "parse_walls_file",
    "point_label",
    "proper_prefix_count",
    "properness_audit",
    "random_element",
    "random_point",
    "reduce",
    "separating_walls",
    "sim_compose",
    "sim_invert",
    "sim_restrict",
    "symdiff",
    "symmetric_group",
    "trivial_group",
    "validate_table",
    "wall_separation",
    "walls_to_zipper",
    "z_member",
    "zipper_length",
]
