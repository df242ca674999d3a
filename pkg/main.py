import asyncio
import sys

from app.cli.service import CliService
from config.log_setup import get_logger
from config.settings import get_config

logger = get_logger(__name__)


async def main(argv: list[str]) -> int:
    cfg = get_config()
    logger.debug("Starting (env=%s, workers=%d)", cfg.environment, cfg.worker_count)
    return await CliService().run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(asyncio.run(main(sys.argv[1:])))
