"""
Message bus routing messages between the curve agents.

Keeps the full history so a run can be audited after the fact, and prints
each hop to the console when verbose.
"""
import logging
from collections import Counter
from typing import Callable, Dict, List, Optional

from rich.console import Console
from rich.table import Table

from .message import Message, MessageType

logger = logging.getLogger(__name__)

_TYPE_COLORS = {
    MessageType.REQUEST: "cyan",
    MessageType.RESPONSE: "green",
    MessageType.CURVE: "blue",
    MessageType.PROFILE: "blue",
    MessageType.VALIDATION_RESULT: "magenta",
    MessageType.COMPLETE: "green",
    MessageType.ERROR: "red",
}


class MessageBus:
    """
    Central hub for inter-agent messages.

    Features:
    - Directed and broadcast delivery
    - History with filtering by sender, receiver, type or correlation id
    - Rich summary table of traffic per agent
    """

    def __init__(self, verbose: bool = True):
        """
        Args:
            verbose: Print every hop (and agent logs) to the console
        """
        self.subscribers: Dict[str, Callable[[Message], None]] = {}
        self.message_history: List[Message] = []
        self.verbose = verbose
        self.console = Console(stderr=True)

    def register(self, agent_name: str, handler: Callable[[Message], None]) -> None:
        """Register an agent's message handler under its unique name."""
        self.subscribers[agent_name] = handler
        if self.verbose:
            self.console.print(f"[dim]📡 Agent registered: {agent_name}[/dim]")

    def unregister(self, agent_name: str) -> None:
        self.subscribers.pop(agent_name, None)

    def send(self, message: Message) -> None:
        """Record a message and deliver it (to everyone but the sender when broadcast)."""
        self.message_history.append(message)
        if self.verbose:
            self._print_message(message)

        if message.receiver is None:
            for agent_name, handler in list(self.subscribers.items()):
                if agent_name != message.sender:
                    handler(message)
            return

        handler = self.subscribers.get(message.receiver)
        if handler is None:
            logger.warning(f"Message for unknown agent '{message.receiver}' dropped")
            return
        handler(message)

    def _print_message(self, message: Message) -> None:
        color = _TYPE_COLORS.get(message.msg_type, "white")
        receiver = message.receiver or "ALL"
        self.console.print(
            f"[dim]{message.timestamp.strftime('%H:%M:%S.%f')[:-3]}[/dim] "
            f"[bold]{message.sender}[/bold] → [bold]{receiver}[/bold] "
            f"[{color}]({message.msg_type.value})[/{color}]"
        )
        if message.msg_type not in (MessageType.CURVE, MessageType.PROFILE):
            self.console.print(f"  [dim]└─ {message.preview(150)}[/dim]")

    def get_history(self,
                    sender: Optional[str] = None,
                    receiver: Optional[str] = None,
                    msg_type: Optional[MessageType] = None) -> List[Message]:
        """Message history filtered by any combination of sender, receiver and type."""
        return [
            m for m in self.message_history
            if (sender is None or m.sender == sender)
            and (receiver is None or m.receiver == receiver)
            and (msg_type is None or m.msg_type == msg_type)
        ]

    def get_conversation(self, correlation_id: str) -> List[Message]:
        return [m for m in self.message_history if m.correlation_id == correlation_id]

    def traffic(self) -> Dict[str, Dict[str, int]]:
        """Sent and received counts per agent; broadcasts count once per recipient."""
        sent: Counter = Counter()
        received: Counter = Counter()
        for message in self.message_history:
            sent[message.sender] += 1
            if message.receiver:
                received[message.receiver] += 1
            else:
                received.update(a for a in self.subscribers if a != message.sender)
        agents = sorted(set(sent) | set(received) | set(self.subscribers))
        return {a: {"sent": sent[a], "received": received[a]} for a in agents}

    def print_summary(self) -> None:
        """Print the traffic table."""
        table = Table(title="📊 Agent Communication Summary")
        table.add_column("Agent", style="cyan")
        table.add_column("Messages Sent", justify="right")
        table.add_column("Messages Received", justify="right")
        for agent, counts in self.traffic().items():
            table.add_row(agent, str(counts["sent"]), str(counts["received"]))
        self.console.print(table)

    def export_log(self) -> List[dict]:
        return [msg.to_dict() for msg in self.message_history]

    def clear_history(self) -> None:
        self.message_history = []
