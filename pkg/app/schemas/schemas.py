from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import Dict, List, Literal, Optional
from pathlib import Path
from enum import Enum


# Enums

class GraphFormat(str, Enum):
    DIMACS_EDGE = "dimacs-edge"
    PACE_GR = "pace-gr"
    EDGE_LIST = "edge-list"


class Method(str, Enum):
    AUTO = "auto"
    COMPACT_GST = "compact-gst"
    TREEWIDTH_DP = "treewidth-dp"
    BRUTE_FORCE = "brute-force"

    @classmethod
    def parse(cls, value: str) -> "Method":
        aliases = {
            "gst": cls.COMPACT_GST,
            "compact": cls.COMPACT_GST,
            "treewidth": cls.TREEWIDTH_DP,
            "dp": cls.TREEWIDTH_DP,
            "brute": cls.BRUTE_FORCE,
            "bruteforce": cls.BRUTE_FORCE,
        }
        value = value.strip().lower()
        if value in aliases:
            return aliases[value]
        return cls(value)


class CountingMode(str, Enum):
    EXACT = "exact"
    MODULAR = "modular"


class OutputMode(str, Enum):
    JSON = "json"
    PLAIN = "plain"


class GeneratorFamily(str, Enum):
    RANDOM_GNM = "random-gnm"
    RANDOM_MULTIGRAPH = "random-multigraph"
    DISJOINT_CYCLES = "disjoint-cycles"
    CVC_GADGET = "cvc-gadget"
    GRID = "grid"
    PARTIAL_KTREE = "partial-ktree"


class ScalingKind(str, Enum):
    GST = "gst"
    DP = "dp"


class Subcommand(str, Enum):
    SOLVE = "solve"
    GST = "gst"
    DSOT = "dsot"
    ENUM = "enum"
    GEN = "gen"
    TD_VALIDATE = "td-validate"
    TD_NICIFY = "td-nicify"
    BENCH = "bench"
    SCHEMA = "schema"


#  Run configuration

class RunConfig(BaseModel):
    subcommand: Subcommand
    inputs: List[Path] = []
    format: Optional[GraphFormat] = None
    method: Method = Method.AUTO
    k: Optional[int] = Field(None, ge=0)
    p: Optional[int] = Field(None, ge=0)
    root: Optional[int] = Field(None, ge=1)
    counting: CountingMode = CountingMode.EXACT
    td_path: Optional[Path] = None
    max_width: Optional[int] = Field(None, ge=0)
    optimize: bool = False
    verify: bool = False
    witness: bool = True
    seed: int = 0
    threads: int = Field(1, ge=1)
    output: OutputMode = OutputMode.JSON

    # gen
    family: Optional[GeneratorFamily] = None
    sizes: List[int] = []
    n: Optional[int] = Field(None, ge=0)
    m: Optional[int] = Field(None, ge=0)
    width: Optional[int] = Field(None, ge=1)

    # bench
    methods: List[Method] = []
    scaling: Optional[ScalingKind] = None
    store: bool = False
    database_url: Optional[str] = None

    @field_validator("method", mode="before")
    @classmethod
    def parse_method(cls, v):
        return Method.parse(v) if isinstance(v, str) else v

    @field_validator("methods", mode="before")
    @classmethod
    def parse_methods(cls, v):
        return [Method.parse(item) if isinstance(item, str) else item for item in v]

    @model_validator(mode="after")
    def check_required(self) -> "RunConfig":
        """Budget and inputs that a subcommand cannot run without"""
        if self.subcommand == Subcommand.SOLVE and self.k is None and not self.optimize:
            raise ValueError("solve requires --k (or --optimize)")
        if self.subcommand == Subcommand.ENUM and self.k is None:
            raise ValueError("enum requires --k")
        if self.subcommand in (Subcommand.GST, Subcommand.DSOT) and self.p is None:
            raise ValueError(f"{self.subcommand.value} requires --p")
        if self.subcommand == Subcommand.DSOT and self.root is None:
            raise ValueError("dsot requires --root")
        if self.subcommand == Subcommand.GEN and self.family is None:
            raise ValueError("gen requires a family")
        if self.subcommand == Subcommand.BENCH and not self.inputs and self.scaling is None:
            raise ValueError("bench requires a corpus path or --scaling")
        return self


#  Result documents

class StatsDocument(BaseModel):
    reps_tried: int = 0
    subsets_evaluated: int = 0
    dp_rows: int = 0
    max_table_rows: int = 0
    elapsed_ms: float = 0.0

    model_config = ConfigDict(from_attributes=True)


class CfvsResult(BaseModel):
    status: Literal["yes", "no"]
    size: Optional[int] = None
    vertices: List[int] = []
    method: Method
    counting: CountingMode = CountingMode.EXACT
    width: Optional[int] = None
    stats: StatsDocument = StatsDocument()


class SteinerResult(BaseModel):
    status: Literal["yes", "no"]
    problem: Literal["gst", "dsot"]
    p: int
    vertices: Optional[List[int]] = None
    counting: CountingMode = CountingMode.EXACT
    stats: StatsDocument = StatsDocument()


class TdReport(BaseModel):
    valid: bool
    width: int
    bags: int
    nice_nodes: Optional[int] = None
    kinds: Optional[Dict[str, int]] = None


class EnumResult(BaseModel):
    k: int
    count: int
    verified: Optional[bool] = None
    # one entry per representation, one list of 1-indexed vertices per set
    representations: List[List[List[int]]] = []


#  Bench schemas

class BenchRow(BaseModel):
    instance: str
    method: Method
    k: Optional[int]
    status: Literal["yes", "no", "error"]
    size: Optional[int] = None
    width: Optional[int] = None
    elapsed_ms: float
    reps_tried: int = 0
    subsets_evaluated: int = 0
    dp_rows: int = 0
    max_table_rows: int = 0

    model_config = ConfigDict(from_attributes=True)


class ScalingRow(BaseModel):
    kind: ScalingKind
    parameter: int
    elapsed_ms: float
    ratio: Optional[float] = None
    rows: Optional[int] = None
    candidates: Optional[int] = None
    bound: Optional[int] = None
    slope: Optional[float] = None
