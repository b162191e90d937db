# greatroot/cli.py
import click
import typer
from typing_extensions import Annotated

from greatroot.commands import checks, inference, simulation, tables
from greatroot.config import settings
from greatroot.utils.logging import setup_logging

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]

app = typer.Typer(
    name="greatroot",
    help="Tracy-Widom approximation for the greatest root of (A + B)^{-1} B.",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)


@app.callback()
def main(
    no_cache: Annotated[
        bool, typer.Option("--no-cache", help="Rebuild Tracy-Widom tables instead of reading the cache.")
    ] = False,
    log_level: Annotated[
        str,
        typer.Option(
            "--log-level",
            click_type=click.Choice(LOG_LEVELS, case_sensitive=False),
            help="Logging level on stderr.",
        ),
    ] = settings.LOG_LEVEL,
):
    setup_logging(log_level)
    if no_cache:
        settings.USE_CACHE = False


app.command("pvalue")(inference.pvalue)
app.command("crit")(inference.crit)
app.command("tw")(tables.tw)
app.command("table")(tables.table)
app.command("simulate")(simulation.simulate)
app.command("spectrum")(simulation.spectrum)
app.command("lg-check")(checks.lg_check)
app.command("kernel-check")(checks.kernel_check)
