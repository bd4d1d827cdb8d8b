"""Observability helpers for Langfuse integration."""

from .langfuse_client import get_langfuse_client, traced, tracing_enabled, update_trace_context

__all__ = ["get_langfuse_client", "traced", "tracing_enabled", "update_trace_context"]
