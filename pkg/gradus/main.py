import click

from gradus.commands import batch, dim, lefschetz, negative_control, nl_classical, verify_type
from gradus.config import configure_logging


@click.group()
@click.option("--log-level", default=None, help="Overrides GRADUS_LOG_LEVEL")
def cli(log_level):
    configure_logging(log_level)


cli.add_command(verify_type)
cli.add_command(lefschetz)
cli.add_command(nl_classical)
cli.add_command(negative_control)
cli.add_command(batch)
cli.add_command(dim)


if __name__ == "__main__":
    cli()
