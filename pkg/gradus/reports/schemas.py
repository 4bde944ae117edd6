import enum
from typing import Any

from pydantic import BaseModel as BaseSchema, ConfigDict, Field

from gradus.config import settings
from gradus.constructions.schemas import Mode


class Command(str, enum.Enum):
    VERIFY_TYPE = "verify-type"
    LEFSCHETZ = "lefschetz"
    NL_CLASSICAL = "nl-classical"
    NEGATIVE_CONTROL = "negative-control"
    BATCH = "batch"
    DIM = "dim"


class JobVerdict(str, enum.Enum):
    FULL = "FULL"
    DEFICIENT = "DEFICIENT"
    TRIVIALLY_RATIONAL = "TRIVIALLY-RATIONAL"
    FOUND = "FOUND"
    NOT_FOUND = "NOT-FOUND"
    AGREES = "AGREES"
    DISAGREES = "DISAGREES"
    ERROR = "ERROR"

    @property
    def is_success(self) -> bool:
        return self in (self.FULL, self.TRIVIALLY_RATIONAL, self.FOUND, self.AGREES)


class StrictSchema(BaseSchema):
    model_config = ConfigDict(extra="forbid")


class RunConfig(StrictSchema):
    """The parsed flags of one command; echoed into every report."""

    command: Command
    types: list[str] = []
    field: str = Field(default_factory=lambda: settings.FIELD)
    mode: Mode = Mode.EXPLICIT
    seed: int | None = None
    out: str | None = None
    cache: str | None = None
    jobs: int = Field(default=1, ge=1)
    dump_matrices: bool = False
    steps: bool = False
    drop: list[str] = []
    degrees: list[int] = []
    degree: int | None = None
    max_t: int | None = None
    max_degree: int | None = None
    families: bool = True

    def flags(self) -> list[str]:
        """The command-line arguments that reproduce this configuration."""

        arguments: list[str] = []
        for bundle in self.types:
            arguments += ["--type", bundle]
        arguments += ["--field", self.field]
        if self.mode != Mode.EXPLICIT:
            arguments += ["--mode", self.mode.value]
        if self.jobs != 1:
            arguments += ["--jobs", str(self.jobs)]
        if self.seed is not None:
            arguments += ["--seed", str(self.seed)]
        if self.out is not None:
            arguments += ["--out", self.out]
        if self.cache is not None:
            arguments += ["--cache", self.cache]
        if self.dump_matrices:
            arguments.append("--dump-matrices")
        if self.steps:
            arguments.append("--steps")
        for name in self.drop:
            arguments += ["--drop", name]
        if self.degrees:
            arguments += ["--degrees", ",".join(str(m) for m in self.degrees)]
        if self.degree is not None:
            arguments += ["--degree", str(self.degree)]
        if self.max_t is not None:
            arguments += ["--max-t", str(self.max_t)]
        if self.max_degree is not None:
            arguments += ["--max-degree", str(self.max_degree)]
        if not self.families:
            arguments.append("--no-families")
        return arguments


class JobSpec(StrictSchema):
    """Exact inputs of one certification job."""

    command: Command = Command.VERIFY_TYPE
    bundle: str
    field: str
    mode: Mode = Mode.EXPLICIT
    seed: int | None = None
    drop: list[str] = []
    steps: bool = False

    @property
    def job_id(self) -> str:
        parts = [self.command.value, self.bundle, self.field, self.mode.value]
        if self.mode == Mode.RANDOM:
            parts.append(f"seed={self.seed or 0}")
        if self.drop:
            parts.append("drop=" + "+".join(self.drop))
        if self.steps:
            parts.append("steps")
        return ":".join(parts)


class JobRecord(StrictSchema):
    job_id: str
    inputs_digest: str
    verdict: JobVerdict
    certificate: dict[str, Any] | None = None
    error: str | None = None


class JobRuntime(StrictSchema):
    job_id: str
    elapsed_ms: int
    cache_hit: bool = False


class Runtime(StrictSchema):
    started_at: str
    finished_at: str
    jobs: list[JobRuntime] = []


class Summary(StrictSchema):
    total: int
    verdicts: dict[str, int]

    @property
    def all_passed(self) -> bool:
        return all(JobVerdict(verdict).is_success for verdict in self.verdicts)


class Report(StrictSchema):
    """
    A versioned run report.

    Everything except ``runtime`` is a function of the configuration and the inputs,
    so reruns agree byte for byte outside that section.
    """

    schema_version: int = Field(default_factory=lambda: settings.SCHEMA_VERSION, alias="schema")
    tool_version: str = Field(default_factory=lambda: settings.TOOL_VERSION)
    config: RunConfig
    records: list[JobRecord] = []
    summary: Summary
    runtime: Runtime | None = None

    model_config = ConfigDict(extra="forbid", populate_by_name=True)
