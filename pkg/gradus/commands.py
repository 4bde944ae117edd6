import functools
import logging
import time
from pathlib import Path
from typing import Callable

import click

from gradus.config import settings
from gradus.constructions.schemas import Mode
from gradus.constructions.services import DROPPABLE, ConstructionService
from gradus.exceptions import DetailedError, InvalidInput
from gradus.external.cache.services import CacheService
from gradus.lefschetz.services import LefschetzService
from gradus.poly.exceptions import InvalidType
from gradus.poly.schemas import Bidegree, RingSpec, TypeTuple
from gradus.poly.services import dim as piece_dim
from gradus.reports.schemas import Command, JobRecord, JobRuntime, JobSpec, JobVerdict, Report, RunConfig
from gradus.reports.services import (
    JobRunner,
    ReportService,
    batch_types,
    inputs_digest,
    now,
    type_text,
)
from gradus.scalar.schemas import FieldSpec

logger = logging.getLogger(__name__)

report_service = ReportService()


def handle_errors(command: Callable) -> Callable:
    """Prints domain errors and exits with their code."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DetailedError as error:
            click.echo(f"Error: {error}", err=True)
            raise SystemExit(error.EXIT_CODE)

    return wrapper


def parse_integers(text: str, name: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise InvalidInput(f"{name} must be comma separated integers", value=text)


def parse_field(text: str | None) -> FieldSpec:
    return FieldSpec.parse(text or settings.FIELD)


def emit(report: Report, out: str | None) -> None:
    """Writes the report to ``out`` or prints it."""

    if out:
        report_service.write(report, out)
        for record in report.records:
            click.echo(f"{record.job_id}: {record.verdict.value}")
    else:
        click.echo(report_service.dumps(report).decode(), nl=False)


def single_job(record: JobRecord, started: float) -> list[tuple[JobRecord, JobRuntime]]:
    elapsed = int((time.perf_counter() - started) * 1000)
    return [(record, JobRuntime(job_id=record.job_id, elapsed_ms=elapsed))]


def finish(report: Report, out: str | None) -> None:
    emit(report, out)
    if not report.summary.all_passed:
        raise SystemExit(1)


def dump_failed(records: list[JobRecord], specs: list[JobSpec], directory: Path) -> None:
    """Writes the matrix of every deficient certificate next to the report."""

    service = ConstructionService()
    by_id = {spec.job_id: spec for spec in specs}
    for record in records:
        spec = by_id.get(record.job_id)
        if spec is None or record.verdict != JobVerdict.DEFICIENT:
            continue
        matrix = service.main_matrix(
            TypeTuple.parse(spec.bundle), spec.field, spec.mode, spec.seed, spec.drop
        )
        target = directory / f"{record.inputs_digest}.matrix"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(matrix.dump())
        logger.info("matrix of %s dumped to %s", record.job_id, target)


def run_specs(config: RunConfig, specs: list[JobSpec], cache: CacheService | None) -> None:
    started_at = now()
    results = JobRunner(config.jobs, cache).run(specs)
    report = report_service.build(config, results, started_at)

    if config.dump_matrices:
        base = Path(config.out).parent if config.out else Path(".")
        dump_failed(report.records, specs, base / "matrices")

    finish(report, config.out)


def job_options(command: Callable) -> Callable:
    options = [
        click.option("--field", "field", default=None, help="qq or fp:PRIME (default GRADUS_FIELD)"),
        click.option(
            "--mode",
            type=click.Choice([mode.value for mode in Mode]),
            default=Mode.EXPLICIT.value,
            show_default=True,
        ),
        click.option("--seed", type=int, default=None, help="Seed for random mode"),
        click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes"),
        click.option("--out", default=None, help="Report path; printed when omitted"),
        click.option("--cache", default=None, help="Cache directory (default GRADUS_CACHE)"),
        click.option("--dump-matrices", is_flag=True, help="Dump matrices of deficient certificates"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.command("verify-type")
@click.option("--type", "types", multiple=True, required=True, help="Type a,b,c,d (repeatable)")
@click.option("--steps", is_flag=True, help="Also certify every step and the decomposition")
@click.option("--drop", multiple=True, type=click.Choice(sorted(DROPPABLE)), help="Force g11 or g33 to zero")
@job_options
@handle_errors
def verify_type(types, steps, drop, field, mode, seed, jobs, out, cache, dump_matrices):
    """
    Certify the containment of S(t,4) in the ideal of the partials of f and g.

    Exit 0 when every verdict is full, 1 on a deficient certificate, 2 on invalid input.
    """

    field_spec = parse_field(field)
    bundles = [TypeTuple.parse(text) for text in types]

    config = RunConfig(
        command=Command.VERIFY_TYPE,
        types=list(types),
        field=str(field_spec),
        mode=Mode(mode),
        seed=seed,
        out=out,
        cache=cache,
        jobs=jobs or settings.JOBS,
        dump_matrices=dump_matrices,
        steps=steps,
        drop=sorted(drop),
    )
    specs = [
        JobSpec(
            bundle=type_text(bundle),
            field=config.field,
            mode=config.mode,
            seed=seed,
            drop=config.drop,
            steps=steps,
        )
        for bundle in bundles
    ]
    run_specs(config, specs, CacheService(cache) if cache else None)


@click.command("negative-control")
@click.option("--type", "types", multiple=True, required=True, help="Type a,b,c,d (repeatable)")
@click.option("--drop", type=click.Choice(sorted(DROPPABLE)), default="g33", show_default=True)
@click.option("--field", "field", default=None, help="qq or fp:PRIME (default GRADUS_FIELD)")
@click.option("--out", default=None, help="Report path; printed when omitted")
@handle_errors
def negative_control(types, drop, field, out):
    """Drop g33 or g11 and compare the verdict with the degree bound that needs it."""

    field_spec = parse_field(field)
    bundles = [TypeTuple.parse(text) for text in types]
    config = RunConfig(
        command=Command.NEGATIVE_CONTROL, types=list(types), field=str(field_spec), out=out, drop=[drop]
    )
    specs = [
        JobSpec(command=Command.NEGATIVE_CONTROL, bundle=type_text(bundle), field=config.field, drop=[drop])
        for bundle in bundles
    ]
    run_specs(config, specs, None)


@click.command()
@click.option("--max-t", "max_t", type=int, default=9, show_default=True)
@click.option("--max-degree", "max_degree", type=int, default=6, show_default=True)
@click.option("--families/--no-families", default=True, show_default=True)
@job_options
@handle_errors
def batch(max_t, max_degree, families, field, mode, seed, jobs, out, cache, dump_matrices):
    """Certify every type up to a bound of t; results are cached by input digest."""

    field_spec = parse_field(field)
    bundles = batch_types(max_t, max_degree, families)
    cache_dir = Path(cache) if cache else settings.CACHE

    config = RunConfig(
        command=Command.BATCH,
        field=str(field_spec),
        mode=Mode(mode),
        seed=seed,
        out=out,
        cache=str(cache_dir),
        jobs=jobs or settings.JOBS,
        dump_matrices=dump_matrices,
        max_t=max_t,
        max_degree=max_degree,
        families=families,
    )
    specs = [
        JobSpec(bundle=bundle.label, field=config.field, mode=config.mode, seed=seed) for bundle in bundles
    ]
    click.echo(f"{len(specs)} types, {config.jobs} worker(s)", err=True)
    run_specs(config, specs, CacheService(cache_dir))


@click.command()
@click.option("--degrees", required=True, help="Generator degrees m0,...,mn, all at least 1")
@click.option("--field", "field", default=None, help="qq or fp:PRIME (default GRADUS_FIELD)")
@click.option("--limit", type=click.IntRange(min=1), default=None, help="Candidate limit")
@click.option("--out", default=None, help="Report path; printed when omitted")
@handle_errors
def lefschetz(degrees, field, limit, out):
    """Find a strong Lefschetz element of the monomial complete intersection."""

    field_spec = parse_field(field)
    values = parse_integers(degrees, "degrees")
    service = LefschetzService()

    started_at, started = now(), time.perf_counter()
    # validates the degrees before any ring is built
    hilbert = service.hilbert_ci(values)
    quotient = service.certify(service.monomial_ci(values, field_spec))
    _, search = service.find_sl_element(quotient, limit)

    config = RunConfig(command=Command.LEFSCHETZ, field=str(field_spec), out=out, degrees=values)
    spec = JobSpec(command=Command.LEFSCHETZ, bundle=degrees, field=config.field)
    record = JobRecord(
        job_id=f"lefschetz:{','.join(map(str, values))}:{config.field}",
        inputs_digest=inputs_digest(spec),
        verdict=JobVerdict.FOUND if search.found else JobVerdict.NOT_FOUND,
        certificate=search.model_dump(mode="json"),
    )
    click.echo(f"h={hilbert.coefficients}", err=True)
    report = report_service.build(config, single_job(record, started), started_at)
    finish(report, out)


@click.command("nl-classical")
@click.option("--degree", type=int, required=True, help="Surface degree d >= 4")
@click.option("--field", "field", default=None, help="qq or fp:PRIME (default GRADUS_FIELD)")
@click.option("--out", default=None, help="Report path; printed when omitted")
@handle_errors
def nl_classical(degree, field, out):
    """Certify P_3(3d-4) in the ideal of the Fermat partials and a Lefschetz power."""

    field_spec = parse_field(field)
    started_at, started = now(), time.perf_counter()
    certificate = ConstructionService().verify_classical_nl(degree, field_spec)

    config = RunConfig(command=Command.NL_CLASSICAL, field=str(field_spec), out=out, degree=degree)
    spec = JobSpec(command=Command.NL_CLASSICAL, bundle=str(degree), field=config.field)
    full = certificate.certificate.full_target_rank
    record = JobRecord(
        job_id=f"nl-classical:{degree}:{config.field}",
        inputs_digest=inputs_digest(spec),
        verdict=JobVerdict.FULL if full else JobVerdict.DEFICIENT,
        certificate=certificate.model_dump(mode="json"),
    )
    report = report_service.build(config, single_job(record, started), started_at)
    finish(report, out)


def parse_ring(name: str, bundle: TypeTuple | None) -> RingSpec:
    label = name.strip().upper()
    if label.startswith("P") and label[1:].isdigit():
        return RingSpec.projective(int(label[1:]))
    if label not in ("S", "T", "U"):
        raise InvalidInput("ring must be S, T, U or P<n>", ring=name)
    if bundle is None:
        raise InvalidType(f"ring {label} needs --type")
    return {"S": RingSpec.for_s, "T": RingSpec.for_t, "U": RingSpec.for_u}[label](bundle)


@click.command()
@click.option("--ring", "ring_name", required=True, help="S, T, U or P<n>")
@click.option("--type", "type_text_", default=None, help="Type a,b,c,d for S, T and U")
@click.option("--bidegree", required=True, help="m,n (or m for P<n>)")
@handle_errors
def dim(ring_name, type_text_, bidegree):
    """Print the dimension of a graded piece."""

    bundle = TypeTuple.parse(type_text_) if type_text_ else None
    ring = parse_ring(ring_name, bundle)
    values = parse_integers(bidegree, "bidegree")
    if len(values) == 1:
        values.append(0)
    if len(values) != 2:
        raise InvalidInput("bidegree must be m,n", bidegree=bidegree)
    click.echo(piece_dim(ring, Bidegree(*values)))
