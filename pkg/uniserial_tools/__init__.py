__version__ = "0.1.0"

from . import (  # noqa: E402
    catalog,
    classify,  # noqa: F401
    codec,  # noqa: F401
    constructions,  # noqa: F401
    lie,  # noqa: F401
    linalg,  # noqa: F401
    logger,
    ops,  # noqa: F401
    sl2,  # noqa: F401
)

log = logger.get_logger(__name__)
log.debug(f"Registered commands: {', '.join(catalog.commands)}")
