from pathlib import Path
from typing import Optional

import typer
from typing_extensions import Annotated

from greatroot import special
from greatroot.config import settings
from greatroot.utils.errors import GreatRootError
from greatroot.utils.logging import setup_logging


def warm_cache(cache_dir: Optional[Path] = None) -> Path:
    """Build both Tracy-Widom tables once and persist them under the cache directory."""
    if cache_dir is not None:
        settings.CACHE_DIR = cache_dir
    special.clear_table_memo()
    for beta_index in (1, 2):
        special.tw_table(beta_index, use_cache=True)
    return special.table_cache_path()


def main(
    cache_dir: Annotated[Optional[Path], typer.Option("--cache-dir", help="Overrides GREATROOT_CACHE_DIR.")] = None,
):
    setup_logging("INFO")
    try:
        path = warm_cache(cache_dir)
    except GreatRootError as e:
        typer.echo(f"Error building Tracy-Widom tables: {e.detail}", err=True)
        raise typer.Exit(code=e.exit_code)
    typer.echo(f"Tracy-Widom tables cached at {path}")


if __name__ == "__main__":
    typer.run(main)
