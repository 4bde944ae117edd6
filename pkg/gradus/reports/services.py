import asyncio
import hashlib
import itertools
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

import orjson
from pydantic import BaseModel, ValidationError

from gradus.config import settings
from gradus.constructions.schemas import Verdict
from gradus.constructions.services import ConstructionService
from gradus.exceptions import DetailedError
from gradus.external.cache.schemas import CacheData
from gradus.external.cache.services import CacheService
from gradus.poly.schemas import TypeTuple
from gradus.reports.exceptions import ReportNotParsed, SchemaVersionMismatch, UnknownReportField
from gradus.reports.schemas import (
    Command,
    JobRecord,
    JobRuntime,
    JobSpec,
    JobVerdict,
    Report,
    RunConfig,
    Runtime,
    Summary,
)

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2

# named families certified on top of the desk-scale range
FAMILIES: tuple[tuple[int, int, int, int], ...] = (
    (2, 2, 2, 2),
    (0, 2, 2, 4),
) + tuple((d, d, d, d + 2) for d in range(4))


def now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def dump_json(payload: BaseModel | dict[str, Any]) -> bytes:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True)
    return orjson.dumps(payload, option=JSON_OPTIONS)


def inputs_digest(spec: JobSpec) -> str:
    """Stable hash of the exact inputs of a job, the schema and the tool version."""

    payload = {
        "inputs": spec.model_dump(mode="json"),
        "schema": settings.SCHEMA_VERSION,
        "tool_version": settings.TOOL_VERSION,
    }
    return hashlib.sha256(orjson.dumps(payload, option=orjson.OPT_SORT_KEYS)).hexdigest()


def type_text(bundle: TypeTuple) -> str:
    """The type in its input order."""

    return ",".join(str(value) for value in bundle.input_degrees)


def batch_types(max_t: int, max_degree: int = 6, families: bool = True) -> list[TypeTuple]:
    """
    Sorted types with ``t <= max_t`` and every degree at most ``max_degree``, followed by
    the named families.

    Args:
        max_t (int): Largest admissible t.
        max_degree (int): Largest admissible degree.
        families (bool): Append the named families whatever their t.

    Returns:
        list[TypeTuple]: Distinct types in lexicographic order of their sorted degrees.
    """

    found: dict[tuple[int, ...], TypeTuple] = {}
    for degrees in itertools.combinations_with_replacement(range(max_degree + 1), 4):
        if len({value % 2 for value in degrees}) != 1:
            continue
        bundle = TypeTuple.of(*degrees)
        if bundle.t <= max_t:
            found[degrees] = bundle

    if families:
        for degrees in FAMILIES:
            found.setdefault(degrees, TypeTuple.of(*degrees))
    return [found[key] for key in sorted(found)]


def _verdict(verdict: Verdict) -> JobVerdict:
    return JobVerdict(verdict.value)


def run_job(spec: JobSpec) -> JobRecord:
    """
    Runs one certification job; domain errors become ERROR records.

    ``verify-type`` jobs certify the containment and, on request, every step and the
    decomposition; ``negative-control`` jobs drop one component of g.
    """

    service = ConstructionService()
    digest = inputs_digest(spec)
    try:
        bundle = TypeTuple.parse(spec.bundle)

        if spec.command == Command.NEGATIVE_CONTROL:
            control = service.negative_control_remark(bundle, spec.drop[0], spec.field)
            return JobRecord(
                job_id=spec.job_id,
                inputs_digest=digest,
                verdict=JobVerdict.AGREES if control.agrees else JobVerdict.DISAGREES,
                certificate=control.model_dump(mode="json"),
            )

        certificate = service.verify_prop_main(bundle, spec.mode, spec.seed, spec.field, spec.drop)
        payload: dict[str, Any] = {"prop": certificate.model_dump(mode="json")}
        verdict = _verdict(certificate.verdict)

        if spec.steps:
            steps = service.verify_steps(bundle, spec.field, spec.mode, spec.seed)
            payload["steps"] = [step.model_dump(mode="json") for step in steps]
            payload["decomposition"] = service.decomposition(bundle).model_dump(mode="json")
            if verdict == JobVerdict.FULL and not all(step.passed for step in steps):
                verdict = JobVerdict.DEFICIENT

        return JobRecord(job_id=spec.job_id, inputs_digest=digest, verdict=verdict, certificate=payload)

    except DetailedError as error:
        logger.error("job %s failed: %s", spec.job_id, error)
        return JobRecord(job_id=spec.job_id, inputs_digest=digest, verdict=JobVerdict.ERROR, error=str(error))


def timed_job(spec: JobSpec) -> tuple[JobRecord, int]:
    started = time.perf_counter()
    record = run_job(spec)
    return record, int((time.perf_counter() - started) * 1000)


class JobRunner:
    """Fans independent jobs out to worker processes and collects their records."""

    def __init__(self, jobs: int = 1, cache: CacheService | None = None):
        self.jobs = max(1, jobs)
        self.cache = cache

    def cached(self, spec: JobSpec) -> JobRecord | None:
        if self.cache is None:
            return None
        value = self.cache.get_by_key(inputs_digest(spec))
        if value is None:
            return None
        try:
            record = JobRecord.model_validate_json(value)
        except ValidationError:
            logger.warning("ignoring unreadable cache entry for %s", spec.job_id)
            return None
        logger.info("cache hit for %s", spec.job_id)
        return record

    def store(self, record: JobRecord) -> None:
        if self.cache is None or record.verdict == JobVerdict.ERROR:
            return
        self.cache.set_key(CacheData(key=record.inputs_digest, value=dump_json(record)))

    async def _execute(self, specs: Sequence[JobSpec]) -> list[tuple[JobRecord, int]]:
        if self.jobs == 1 or len(specs) <= 1:
            return [timed_job(spec) for spec in specs]

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            futures = [loop.run_in_executor(pool, timed_job, spec) for spec in specs]
            return list(await asyncio.gather(*futures))

    def run(self, specs: Iterable[JobSpec]) -> list[tuple[JobRecord, JobRuntime]]:
        """
        Runs every job not found in the cache and stores fresh records.

        Args:
            specs (Iterable[JobSpec]): The jobs; duplicates are run once.

        Returns:
            list[tuple[JobRecord, JobRuntime]]: One record per distinct job id.
        """

        unique = {spec.job_id: spec for spec in specs}
        results: dict[str, tuple[JobRecord, JobRuntime]] = {}
        pending: list[JobSpec] = []

        for job_id, spec in unique.items():
            record = self.cached(spec)
            if record is None:
                pending.append(spec)
            else:
                results[job_id] = (record, JobRuntime(job_id=job_id, elapsed_ms=0, cache_hit=True))

        for record, elapsed in asyncio.run(self._execute(pending)):
            self.store(record)
            results[record.job_id] = (record, JobRuntime(job_id=record.job_id, elapsed_ms=elapsed))

        return [results[job_id] for job_id in sorted(results)]


class ReportService:
    """Assembles, writes and reads versioned JSON reports."""

    def build(
        self,
        config: RunConfig,
        results: Sequence[tuple[JobRecord, JobRuntime]],
        started_at: str | None = None,
    ) -> Report:
        records = sorted((record for record, _ in results), key=lambda record: record.job_id)
        runtimes = sorted((runtime for _, runtime in results), key=lambda runtime: runtime.job_id)
        counts = Counter(record.verdict.value for record in records)

        return Report(
            config=config,
            records=records,
            summary=Summary(total=len(records), verdicts=dict(sorted(counts.items()))),
            runtime=Runtime(started_at=started_at or now(), finished_at=now(), jobs=runtimes),
        )

    def dumps(self, report: Report) -> bytes:
        return dump_json(report) + b"\n"

    def deterministic_bytes(self, report: Report) -> bytes:
        """The report without its runtime section; equal across reruns."""

        return dump_json(report.model_dump(mode="json", by_alias=True, exclude={"runtime"}))

    def write(self, report: Report, path: Path | str) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(self.dumps(report))
        logger.info("report written to %s", target)
        return target

    def read(self, source: Path | str | bytes) -> Report:
        """
        Reads a report strictly.

        Raises:
            ReportNotParsed: If the text is not JSON or misses required fields.
            SchemaVersionMismatch: If it was written with another schema version.
            UnknownReportField: If it carries fields the schema does not define.
        """

        raw = source if isinstance(source, bytes) else Path(source).read_bytes()
        try:
            data = orjson.loads(raw)
        except orjson.JSONDecodeError as error:
            raise ReportNotParsed(reason=str(error))

        if not isinstance(data, dict):
            raise ReportNotParsed(reason="top level is not an object")
        if data.get("schema") != settings.SCHEMA_VERSION:
            raise SchemaVersionMismatch(found=data.get("schema"), expected=settings.SCHEMA_VERSION)

        try:
            return Report.model_validate(data)
        except ValidationError as error:
            unknown = [
                ".".join(str(part) for part in item["loc"])
                for item in error.errors()
                if item["type"] == "extra_forbidden"
            ]
            if unknown:
                raise UnknownReportField(fields=unknown)
            raise ReportNotParsed(reason=str(error))
