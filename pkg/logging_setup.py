import logging
import os
import sys
from tqdm import tqdm


class ColoredFormatter(logging.Formatter):
    """Formatter that adds colors to log levels."""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
    }
    RESET = '\033[0m'

    def format(self, record):
        log_message = super().format(record)
        level_name = record.levelname
        if level_name in self.COLORS and sys.stderr.isatty():
            colored_level = f"{self.COLORS[level_name]}{level_name}{self.RESET}"
            log_message = log_message.replace(level_name, colored_level, 1)
        return log_message


class TqdmLogHandler(logging.StreamHandler):
    """Send records through tqdm.write so progress bars are not torn.

    Output goes to stderr; stdout is reserved for the JSON document.
    """

    def emit(self, record):
        try:
            msg = self.format(record)
            tqdm.write(msg, file=sys.stderr)
        except Exception:
            self.handleError(record)


def configure_logging(debug: bool = False) -> None:
    """Configure the root logger with colored levels.

    INFO by default; DEBUG when `debug` is set or ZCGE_DEBUG=1.
    """
    if os.environ.get("ZCGE_DEBUG") == "1":
        debug = True
    level = logging.DEBUG if debug else logging.INFO

    handler = TqdmLogHandler()
    handler.setFormatter(ColoredFormatter("%(levelname)s %(name)s:%(lineno)d: %(message)s"))

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for existing_handler in root_logger.handlers[:]:
        root_logger.removeHandler(existing_handler)
    root_logger.addHandler(handler)
