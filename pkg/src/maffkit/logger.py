import logging
import sys

HANDLER_NAME = "maffkit"


def setup_logging(level="INFO", stream=None):
    logger = logging.getLogger("maffkit")
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))

    # only our own handler is replaced; anything else attached stays put
    for old in [h for h in logger.handlers if h.get_name() == HANDLER_NAME]:
        logger.removeHandler(old)

    handler = logging.StreamHandler(stream or sys.stdout)
    handler.set_name(HANDLER_NAME)
    fmt = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
    handler.setFormatter(logging.Formatter(fmt))

    logger.addHandler(handler)
    logger.propagate = False
    return logger
