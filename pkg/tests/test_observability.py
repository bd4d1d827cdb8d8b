"""Langfuse helpers follow the single DRIFTBANDIT_TRACING setting."""

from harness import HarnessConfig
from observability import get_langfuse_client, traced, tracing_enabled, update_trace_context


def _work(x):
    return x + 1


class TestTracingSwitch:
    def test_flag_comes_from_harness_config(self, monkeypatch):
        monkeypatch.setattr(HarnessConfig, "TRACING", True)
        assert tracing_enabled() is True
        monkeypatch.setattr(HarnessConfig, "TRACING", False)
        assert tracing_enabled() is False

    def test_disabled_decorator_is_identity(self, monkeypatch):
        monkeypatch.setattr(HarnessConfig, "TRACING", False)
        assert traced("work")(_work) is _work
        assert get_langfuse_client() is None

    def test_disabled_context_update_is_a_no_op(self, monkeypatch):
        monkeypatch.setattr(HarnessConfig, "TRACING", False)
        assert update_trace_context(name="run", tags=["case1"], metadata={"seed": 7}) is None
