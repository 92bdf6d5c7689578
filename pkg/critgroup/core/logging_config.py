"""
Logging setup
"""

import logging
from typing import Optional

from critgroup.core.config import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """Configure the root logger once, from settings unless a level is given"""
    name = (level or ("DEBUG" if settings.DEBUG else settings.LOG_LEVEL)).upper()
    logging.basicConfig(level=getattr(logging, name, logging.WARNING), format=LOG_FORMAT)
    logging.getLogger().setLevel(getattr(logging, name, logging.WARNING))
