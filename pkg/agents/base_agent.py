"""
Base Agent class that all curve agents inherit from.
Provides common functionality for agent communication and lifecycle.

This module defines:
- ICurveAgent: Interface contract for all agents
- AgentState: Lifecycle state enumeration
- BaseAgent: Abstract base implementation
"""
import logging
import os
import traceback
from abc import ABC, abstractmethod
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Protocol, runtime_checkable

from rich.console import Console

from communication.message import Message, MessageType
from communication.message_bus import MessageBus
from models.errors import CurveFormatError, CurveGeometryError

FILE_LOGGER_NAME = "aesthetica"


# =============================================================================
# INTERFACE CONTRACT
# =============================================================================

@runtime_checkable
class ICurveAgent(Protocol):
    """
    Interface contract for the agents of a curve pipeline.

    Usage:
        def run_step(agent: ICurveAgent, curve):
            if agent.health_check():
                return agent.safe_execute(curve=curve)
    """

    @property
    def name(self) -> str:
        ...

    @property
    def is_active(self) -> bool:
        ...

    def execute(self, **kwargs) -> Any:
        ...

    def health_check(self) -> bool:
        ...

    def startup(self) -> None:
        ...

    def shutdown(self) -> None:
        ...

    def get_metrics(self) -> Dict[str, Any]:
        ...


class AgentState(Enum):
    """Agent lifecycle states."""
    INITIALIZING = "initializing"
    IDLE = "idle"
    PROCESSING = "processing"
    COMPLETED = "completed"
    ERROR = "error"
    SHUTDOWN = "shutdown"


class BaseAgent(ABC):
    """
    Abstract base class for all agents of the curve pipeline.

    Provides:
    - Message sending/receiving via MessageBus
    - State management with explicit lifecycle
    - Dual logging (console when the bus is verbose, plus the session log file)
    - Error handling with graceful degradation

    Attributes:
        name: Unique identifier for the agent
        message_bus: Reference to the central message bus
        state: Agent's data store
        agent_state: Current lifecycle state
        is_active: Whether the agent is currently active
    """

    # Class-level file logger (shared across all agents)
    _file_logger: Optional[logging.Logger] = None
    _log_file_path: Optional[str] = None

    @classmethod
    def setup_file_logging(cls, log_dir: str = "output") -> str:
        """
        Open the session log file shared by all agents.

        Args:
            log_dir: Directory for log files

        Returns:
            Path to the log file (the existing one when already open)
        """
        if cls._file_logger is not None:
            return cls._log_file_path

        Path(log_dir).mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        log_file = os.path.join(log_dir, f"aesthetica_log_{timestamp}.txt")

        file_logger = logging.getLogger(FILE_LOGGER_NAME)
        file_logger.setLevel(logging.DEBUG)
        file_logger.propagate = False
        handler = logging.FileHandler(log_file, mode="w", encoding="utf-8")
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(logging.Formatter(
            "%(asctime)s | %(levelname)-8s | %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        ))
        file_logger.addHandler(handler)

        cls._file_logger = file_logger
        cls._log_file_path = log_file

        file_logger.info("=" * 70)
        file_logger.info("AESTHETICA CURVE TOOLKIT - SESSION LOG")
        file_logger.info(f"Session started: {datetime.now().isoformat()}")
        file_logger.info("=" * 70)
        return log_file

    @classmethod
    def close_file_logging(cls) -> None:
        """Flush and detach the session log file."""
        if cls._file_logger is None:
            return
        for handler in list(cls._file_logger.handlers):
            handler.close()
            cls._file_logger.removeHandler(handler)
        cls._file_logger = None
        cls._log_file_path = None

    def __init__(self, name: str, message_bus: MessageBus):
        """
        Args:
            name: Unique name for this agent
            message_bus: The central message bus for communication
        """
        self.name = name
        self.message_bus = message_bus
        self.state: Dict[str, Any] = {}
        self.agent_state = AgentState.INITIALIZING
        self.is_active = True
        self.console = Console(stderr=True)
        self._message_handlers: Dict[MessageType, Callable] = {}
        self._error_count = 0
        self._max_errors = 3
        self._last_execution_time: Optional[float] = None

        self.message_bus.register(self.name, self._handle_message)
        self._setup_handlers()

        self._transition_state(AgentState.IDLE)
        self.log("Agent initialized and ready", "debug")

    def _setup_handlers(self) -> None:
        """Map message types to handlers. Extend in subclasses."""
        self._message_handlers = {
            MessageType.REQUEST: self._on_request,
            MessageType.DATA: self._on_data,
            MessageType.CURVE: self._on_curve,
            MessageType.VALIDATION_RESULT: self._on_validation_result,
            MessageType.COMPLETE: self._on_complete,
        }

    def _handle_message(self, message: Message) -> None:
        handler = self._message_handlers.get(message.msg_type)
        if handler:
            handler(message)
        else:
            self._on_unknown_message(message)

    # ==================== Message Handlers (Override in subclasses) ====================

    def _on_request(self, message: Message) -> None:
        pass

    def _on_data(self, message: Message) -> None:
        pass

    def _on_curve(self, message: Message) -> None:
        pass

    def _on_validation_result(self, message: Message) -> None:
        pass

    def _on_complete(self, message: Message) -> None:
        pass

    def _on_unknown_message(self, message: Message) -> None:
        self.log(f"Ignoring {message.msg_type.value} message from {message.sender}", "debug")

    # ==================== Message Sending ====================

    def _log_hop(self, message: Message) -> None:
        if BaseAgent._file_logger:
            BaseAgent._file_logger.info(
                "[MessageBus] %s → %s (%s) correlation=%s | %s",
                message.sender,
                message.receiver or "ALL",
                message.msg_type.value,
                message.correlation_id or "-",
                message.preview(120),
            )

    def send(self,
             msg_type: MessageType,
             content: Any,
             receiver: Optional[str] = None,
             correlation_id: Optional[str] = None,
             metadata: Optional[dict] = None) -> Message:
        """
        Send a message through the message bus.

        Args:
            msg_type: Type of message
            content: Message payload
            receiver: Target agent (None for broadcast)
            correlation_id: ID for tracking conversation threads
            metadata: Additional metadata

        Returns:
            The sent message
        """
        message = Message(
            msg_type=msg_type,
            sender=self.name,
            receiver=receiver,
            content=content,
            metadata=metadata or {},
        )
        if correlation_id:
            message.correlation_id = correlation_id
        self._log_hop(message)
        self.message_bus.send(message)
        return message

    def respond(self, original: Message, content: Any,
                msg_type: MessageType = MessageType.RESPONSE) -> Message:
        response = Message.create_response(original, content, msg_type)
        response.sender = self.name
        self._log_hop(response)
        self.message_bus.send(response)
        return response

    def broadcast(self, content: Any, msg_type: MessageType = MessageType.BROADCAST) -> Message:
        return self.send(msg_type, content, receiver=None)

    # ==================== Data State Management ====================

    def set_data(self, key: str, value: Any) -> None:
        self.state[key] = value

    def get_data(self, key: str, default: Any = None) -> Any:
        return self.state.get(key, default)

    def clear_data(self) -> None:
        self.state = {}

    # ==================== Lifecycle ====================

    @abstractmethod
    def execute(self, **kwargs) -> Any:
        """Run the agent's pipeline step."""

    def startup(self) -> None:
        """Reset error counters and mark the agent ready."""
        self.is_active = True
        self._error_count = 0
        self._transition_state(AgentState.IDLE)
        self.log("🟢 Agent started", "debug")

    def shutdown(self) -> None:
        """Unregister from the message bus and log final status."""
        self._transition_state(AgentState.SHUTDOWN)
        self.is_active = False
        self.message_bus.unregister(self.name)
        if BaseAgent._file_logger:
            BaseAgent._file_logger.info(
                f"[{self.name}] SHUTDOWN - Final state: {self.agent_state.value}, Errors: {self._error_count}"
            )

    def health_check(self) -> bool:
        return (
            self.is_active
            and self.agent_state not in (AgentState.ERROR, AgentState.SHUTDOWN)
            and self._error_count < self._max_errors
        )

    def get_metrics(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "state": self.agent_state.value,
            "is_active": self.is_active,
            "error_count": self._error_count,
            "max_errors": self._max_errors,
            "is_healthy": self.health_check(),
            "execution_time": self._last_execution_time,
        }

    # ==================== Logging ====================

    def log(self, message: str, level: str = "info") -> None:
        """
        Log a message with agent context (console when verbose, plus file).

        Args:
            message: The log message
            level: info, warning, error, debug or success
        """
        if self.message_bus.verbose:
            colors = {
                "info": "blue",
                "warning": "yellow",
                "error": "red",
                "debug": "dim",
                "success": "green",
            }
            color = colors.get(level, "white")
            self.console.print(f"[{color}][{self.name}] {message}[/{color}]")

        if BaseAgent._file_logger:
            log_level = {
                "warning": logging.WARNING,
                "error": logging.ERROR,
                "debug": logging.DEBUG,
            }.get(level, logging.INFO)
            BaseAgent._file_logger.log(log_level, f"[{self.name}] {message}")

    # ==================== State Management ====================

    def _transition_state(self, new_state: AgentState) -> None:
        old_state = self.agent_state
        self.agent_state = new_state
        if BaseAgent._file_logger:
            BaseAgent._file_logger.debug(
                f"[{self.name}] State: {old_state.value} → {new_state.value}"
            )

    def get_agent_state(self) -> AgentState:
        return self.agent_state

    # ==================== Error Handling ====================

    def _handle_error(self, error: Exception, context: str = "") -> bool:
        """
        Count an error and decide whether the agent may continue.

        Returns:
            True while the agent stays below its error budget
        """
        self._error_count += 1
        self._transition_state(AgentState.ERROR)

        error_msg = f"Error in {context}: {type(error).__name__}: {error}"
        self.log(error_msg, "error")
        if BaseAgent._file_logger:
            BaseAgent._file_logger.error(f"[{self.name}] Traceback:\n{traceback.format_exc()}")

        if self._error_count >= self._max_errors:
            self.log(f"Max errors ({self._max_errors}) reached - agent degraded", "warning")
            return False

        self._transition_state(AgentState.IDLE)
        return True

    def safe_execute(self, **kwargs) -> Any:
        """
        Execute with state tracking.

        Domain errors (CurveGeometryError) and format errors always propagate
        so the caller can report them; other failures are absorbed until the
        error budget is spent.

        Returns:
            Result of execute(), or None when an unexpected error was absorbed
        """
        started = datetime.now()
        try:
            self._transition_state(AgentState.PROCESSING)
            result = self.execute(**kwargs)
            self._transition_state(AgentState.COMPLETED)
            return result
        except (CurveGeometryError, CurveFormatError, OSError) as e:
            self._handle_error(e, "execute()")
            raise
        except Exception as e:
            if not self._handle_error(e, "execute()"):
                raise
            return None
        finally:
            self._last_execution_time = (datetime.now() - started).total_seconds()

    # ==================== Utility Methods ====================

    def __str__(self) -> str:
        status = "active" if self.is_active else "inactive"
        return f"{self.name} ({self.__class__.__name__}, {status})"

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(name='{self.name}', active={self.is_active})>"
