import logging
import sys


def setup_loggers(level=logging.INFO):
    logger = logging.getLogger()
    logger.setLevel(level)
    for handler in list(logger.handlers):
        if getattr(handler, "_hyperverify", False):
            logger.removeHandler(handler)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler._hyperverify = True
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    logger.propagate = False
