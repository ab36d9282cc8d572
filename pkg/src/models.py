"""Pydantic report models for every pipeline; all numeric fields are exact integers."""

from pydantic import BaseModel


class LengthComparisonRow(BaseModel):
    q: int
    d: int
    k: int
    s_open: int | None
    n_open: int | None
    s_closed: int | None
    n_closed: int | None
    difference: int | None  # n_open - n_closed


class ChainReport(BaseModel):
    label: str
    variant: str
    q: int
    k: int
    d: int
    s: int
    n: int
    rate: str  # exact fraction "k/n"
    overlap_ok: dict[str, bool]  # level -> bound satisfied
    expected_a_d: int | None = None
    measured_d: int | None = None
    measured_counts: dict[int, int] | None = None
    matches_expected: bool | None = None


class ConditionReport(BaseModel):
    d: int
    t: int
    q: int
    counts: dict[int, int]  # A_d .. A_{d+extra}
    a_d_matches: bool  # A_d = t(q-1)
    zero_above: bool  # A_{d+1} .. A_{d+extra} all zero

    @property
    def holds(self) -> bool:
        return self.a_d_matches and self.zero_above


class CapabilityReport(BaseModel):
    q: int
    k: int
    d_d: int
    d_f: int
    gap: int
    subcode_dim: int
    gamma: int
    component_count: int
    max_image_size: int
    strict_possible: bool


class InsertionReport(BaseModel):
    mode: str  # "one" | "two"
    n: int
    k: int
    d: int
    t_before: int
    t_after: int
    positions: list[int]
    scalars: list[int]
    b: list[int]
    output_counts: dict[int, int]  # measured A_w(D) for d <= w <= d + extra
    exhaustive: bool
    capability: CapabilityReport | None = None


class Weight3Record(BaseModel):
    i: int
    j: int
    a: int
    b: int
    roots_ok: bool
    subfield_ok: bool
    quadratic_ok: bool


class ContainmentReport(BaseModel):
    p: int
    m: int
    n: int
    checked_exponents: list[int]
    witness_count: int
    roots_ok: bool
    subfield_ok: bool
    quadratic_ok: bool
    no_low_weight: bool  # no codeword of weight <= 2
    passed: bool
    sample: list[Weight3Record] = []


class StrictnessReport(BaseModel):
    p: int
    m: int
    proper: bool  # p+1 outside Cl(1) and Cl(2)
    dim_c12: int
    dim_d: int
    codim: int
    codim_expected: int
    codim_matches: bool
    status: str  # "found" | "inconclusive"
    witness: list[int] | None = None  # full-length weight-4 codeword of C_{1,2} outside D
    failing_exponent: int | None = None
    passed: bool


class DimensionClaimsReport(BaseModel):
    p: int
    m: int
    coset_sizes: dict[int, int]  # representative p^r + 1 -> |Cl|
    sizes_ok: bool
    distinct: bool
    disjoint_from_base: bool
    mirror_identity: bool  # Cl(p^r+1) = Cl(p^(m-r)+1)
    dim_c12: int
    dim_d: int
    formula_dim: int
    formula_holds: bool
    passed: bool


class BchCapabilityReport(BaseModel):
    p: int
    m: int
    n: int
    dim_c12: int
    dim_d: int
    codim: int
    coset_count: int
    subcode_size_exponent: int  # |D| = p ** subcode_size_exponent
    d_d: int
    d_f: int


class LinearFastPath(BaseModel):
    gamma: int
    component_count: int
    enough_components: bool  # q^k / gamma >= E
    preimages_divisible: bool  # every preimage size is a multiple of gamma


class FeasibilityReport(BaseModel):
    d_d: int
    d_f: int
    d_min: int
    distance_matches: bool
    image_size: int
    preimage_sizes: list[int] | None  # per image value, image order; None when the image is too large to list
    preimage_size_counts: dict[int, int]  # preimage size -> number of values with that size
    component_count: int
    component_sizes: list[int]
    c2_status: str  # "feasible" | "infeasible" | "unknown"
    grouping: list[list[int]] | None = None  # component indices per image value, image order
    linear: LinearFastPath | None = None
    component_bound: int
    excluded: bool  # no encoding into this code can work at all
    strict: bool

    @property
    def feasible(self) -> bool:
        return self.distance_matches and self.c2_status == "feasible"


class VerificationReport(BaseModel):
    mode: str  # "exhaustive" | "structural" | "sampled"
    passed: bool | None  # None: sampled run without a violation, not a certificate
    d_d: int
    d_f: int
    strict: bool
    pairs_checked: int
    total_pairs: int | None = None
    data_violations: int
    function_violations: int
    details: list[str] = []


class ChannelReport(BaseModel):
    trials: int
    error_weight: int
    seed: int
    data_recovered: int
    function_recovered: int
    data_ambiguous: int
    function_ambiguous: int


class AnalysisReport(BaseModel):
    n: int
    q: int
    kind: str
    k: int | None
    size: int
    d_min: int
    d_max: int | None
    weight_distribution: dict[int, int]
    alpha: int
    subcode_dim: int | None
    component_count: int
    component_sizes: list[int]
    gamma: int | None


class TargetResult(BaseModel):
    target: str
    passed: bool
    details: list[str]


class ReproduceSummary(BaseModel):
    passed: bool
    results: list[TargetResult]


class RunManifest(BaseModel):
    subcommand: str
    inputs: list[str]
    parameters: dict
    seed: int
    outputs: list[str]
    version: str
    wall_clock_ms: int
