import importlib

from loguru import logger

import src
from src.config import reset_settings
from src.logger import configure_logging


def test_importing_the_package_drops_debug_output(monkeypatch, capfd):
    monkeypatch.delenv("AGROUP_LOG_LEVEL", raising=False)
    reset_settings()
    importlib.reload(src)
    logger.debug("table scan detail")
    logger.warning("budget nearly spent")
    err = capfd.readouterr().err
    assert "budget nearly spent" in err
    assert "table scan detail" not in err


def test_log_level_comes_from_the_environment(monkeypatch, capfd):
    monkeypatch.setenv("AGROUP_LOG_LEVEL", "debug")
    reset_settings()
    importlib.reload(src)
    logger.debug("table scan detail")
    assert "table scan detail" in capfd.readouterr().err
    configure_logging("WARNING")
