"""Exception hierarchy for the environment suite.

Every failure mode the public API can signal is a subclass of
:class:`MemsuiteError`, so callers can catch one base type at process
boundaries (CLI, wire server) and map it to an error payload by class name.
"""

from __future__ import annotations


class MemsuiteError(Exception):
    """Base class for all suite-specific errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class UnknownTask(MemsuiteError):
    """Task id does not resolve against the registry."""


class InvalidMode(MemsuiteError):
    """Mode string is not one of the task's registered modes."""


class BadParam(MemsuiteError):
    """Unknown task parameter key, or a value outside its valid range."""


class ActionShape(MemsuiteError):
    """Action has the wrong arity or dtype for the action space."""


class ActionRange(MemsuiteError):
    """Discrete action index out of bounds (continuous actions are clamped)."""


class SteppedFinished(MemsuiteError):
    """step() called on a finished (or never reset) episode."""


class OutOfEpisode(MemsuiteError):
    """Phase query for a timestep outside [0, timeout)."""


class LaneActionShape(MemsuiteError):
    """A batched action was invalid; carries the offending lane index."""

    def __init__(self, lane: int, message: str):
        super().__init__(f"lane {lane}: {message}")
        self.lane = lane


class OracleUnavailable(MemsuiteError):
    """No scripted solver exists for this task."""


class OracleFailureRate(MemsuiteError):
    """Dataset collection aborted because too many oracle rollouts failed."""


class BadMagic(MemsuiteError):
    """Dataset file does not start with the expected magic bytes."""


class SchemaMismatch(MemsuiteError):
    """Dataset header is inconsistent with the payload or expected schema."""


class TruncatedPayload(MemsuiteError):
    """Dataset payload is shorter than the header declares."""


class AgentProtocol(MemsuiteError):
    """Agent returned a malformed action or violated the agent API."""


class EpisodeTimeout(MemsuiteError):
    """Per-episode wall-clock guard exceeded during evaluation."""


class BindFailed(MemsuiteError):
    """Server could not bind the requested address."""


class SessionLimit(MemsuiteError):
    """Server refused a new session because max_sessions was reached."""
