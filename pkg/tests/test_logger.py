"""
Tests for logging setup.
"""

from loguru import logger

from mfkit import equiv
from mfkit.logger import active_level, get_logger, init_worker_logging, setup_logger


def _capture():
    records = []
    sink_id = logger.add(lambda message: records.append(message.record), level="DEBUG")
    return records, sink_id


def test_component_binding():
    """Test records carry the component name, defaulting to mfkit."""
    records, sink_id = _capture()
    try:
        get_logger("groebner").info("bound")
        get_logger().info("plain")
    finally:
        logger.remove(sink_id)
    assert [r["extra"]["component"] for r in records] == ["groebner", "mfkit"]


def test_setup_with_file(tmp_path):
    """Test the file sink is created and the level is remembered."""
    log_file = tmp_path / "logs" / "mfkit.log"
    setup_logger("DEBUG", log_file)
    get_logger("cli").info("hello")
    logger.complete()
    assert "cli:test_setup_with_file" in log_file.read_text(encoding="utf-8")
    assert active_level() == "DEBUG"
    setup_logger("WARNING")
    assert active_level() == "WARNING"


def test_worker_logging_level():
    """Test the worker initializer installs a stderr sink at the given level."""
    init_worker_logging("ERROR")
    records, sink_id = _capture()
    try:
        get_logger("equiv").error("kept")
    finally:
        logger.remove(sink_id)
    assert [r["message"] for r in records] == ["kept"]
    setup_logger("WARNING")


def test_pool_receives_level_as_argument(monkeypatch):
    """Test decide_pairs hands the active level to the worker initializer."""
    seen = {}

    class FakePool:
        def __init__(self, **kwargs):
            seen.update(kwargs)

        def __enter__(self):
            return self

        def __exit__(self, *exc):
            return False

        def map(self, fn, items, chunksize=1):
            return [True for _ in items]

    monkeypatch.setattr(equiv, "ProcessPoolExecutor", FakePool)
    setup_logger("INFO")
    assert equiv.decide_pairs([(None, None), (None, None)], jobs=2) == [True, True]
    assert seen["initializer"] is init_worker_logging
    assert seen["initargs"] == ("INFO",)
    setup_logger("WARNING")
