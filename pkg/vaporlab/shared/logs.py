import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

LOG_FORMAT = '%(asctime)s | %(levelname)-8s | %(name)-18s | %(message)s'


def setup_logging(level: str = "INFO", log_dir: Optional[str] = None, tag: str = "Run") -> logging.Logger:
    """Stream handler always, timestamped file handler when log_dir is set."""
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if log_dir:
        path = Path(log_dir)
        path.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        handlers.append(logging.FileHandler(str(path / f"{tag}_{timestamp}.log"), mode='w'))

    logging.basicConfig(
        format=LOG_FORMAT,
        datefmt='%H:%M:%S',
        level=getattr(logging, level.upper(), logging.INFO),
        handlers=handlers,
        force=True,
    )
    return logging.getLogger(tag)
