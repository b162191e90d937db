# greatroot/cache.py
import logging
from pathlib import Path
from typing import Optional

import pandas as pd

from greatroot.config import settings

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def get_cache_dir(override: Optional[Path] = None) -> Path:
    """Resolve (and create) the cache directory; GREATROOT_CACHE_DIR overrides the default."""
    path = Path(override) if override is not None else Path(settings.CACHE_DIR)
    path = path.expanduser()
    path.mkdir(parents=True, exist_ok=True)
    return path


def cache_path(name: str, override: Optional[Path] = None) -> Path:
    return get_cache_dir(override) / name


def write_frame(frame: pd.DataFrame, path: Path) -> Path:
    """Write a frame with full double precision through a temporary file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    frame.to_csv(tmp, index=False, float_format=FLOAT_FORMAT)
    tmp.replace(path)
    logger.info("wrote %s (%d rows)", path, len(frame))
    return path


def read_frame(path: Path) -> Optional[pd.DataFrame]:
    path = Path(path)
    if not path.exists():
        return None
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, ValueError, pd.errors.ParserError) as e:
        logger.warning("ignoring unreadable cache file %s: %s", path, e)
        return None
    logger.info("loaded %s from cache", path)
    return frame
