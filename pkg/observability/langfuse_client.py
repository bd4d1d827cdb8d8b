"""Shared Langfuse helpers for tracing experiment runs."""

from __future__ import annotations

import functools
from typing import Any, Callable, Dict, List, Optional, TypeVar

F = TypeVar("F", bound=Callable[..., Any])

_client = None


def tracing_enabled() -> bool:
    """Current DRIFTBANDIT_TRACING setting, as read by HarnessConfig."""
    # harness imports this module, so the settings class is resolved lazily
    from harness.config import HarnessConfig

    return HarnessConfig.TRACING


def get_langfuse_client():
    """Return a cached Langfuse client instance, or None when tracing is off or unavailable."""
    global _client
    if not tracing_enabled():
        return None
    if _client is None:
        try:
            from langfuse import get_client

            _client = get_client()
        except Exception:
            return None
    return _client


def traced(name: str) -> Callable[[F], F]:
    """Wrap a function in a Langfuse span when tracing is enabled; identity otherwise."""

    def decorator(func: F) -> F:
        if not tracing_enabled():
            return func
        try:
            from langfuse import observe
        except Exception:
            return func
        wrapped = observe(name=name, as_type="span")(func)
        return functools.wraps(func)(wrapped)

    return decorator


def update_trace_context(
    *,
    name: Optional[str] = None,
    tags: Optional[List[str]] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> None:
    """Attach a run name, tags or experiment metadata to the active trace, if any."""
    client = get_langfuse_client()
    if client is None:
        return
    fields = {"name": name, "tags": tags, "metadata": metadata}
    payload = {key: value for key, value in fields.items() if value}
    if not payload:
        return
    try:
        client.update_current_trace(**payload)
    except Exception:
        # No active span outside a traced call
        return
