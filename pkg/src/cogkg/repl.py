"""Interactive teaching loop: statements end with '.', questions with '?'.

Meta-commands: :wm (working set), :signals, :save <file>, :load <file>,
:quit. Every turn prints the answer or acknowledgement plus the four
signal values; parse failures show the offset and a hint, and the session
continues.
"""

from __future__ import annotations

import sys

from .activation import ActivationState
from .cognition import Session, Signals
from .snapshot import load_snapshot, save_snapshot

__all__ = ["repl"]

_HINT = "statements end with '.', questions with '?'; :quit exits"


def _format_signals(s: Signals) -> str:
    return (
        f"[surprise {s.surprise:.2f}  certainty {s.certainty:.2f}  "
        f"confusion {s.confusion:.2f}  boredom {s.boredom:.2f}]"
    )


def _show_working_set(session: Session, out) -> None:
    entries = session.activation.working_set()
    if not entries:
        print("(working memory empty)", file=out)
        return
    for node_id, level in entries:
        node = session.graph.node(node_id)
        label = node.label or f"#{node_id}"
        print(f"  {level:5.3f}  {label} ({node.kind.value})", file=out)


def _meta(session: Session, line: str, out) -> Session | None:
    """Handle a meta-command; returns the (possibly replaced) session, or
    None for :quit."""
    parts = line.split(None, 1)
    command, arg = parts[0], (parts[1].strip() if len(parts) > 1 else "")
    if command == ":quit":
        return None
    if command == ":wm":
        _show_working_set(session, out)
    elif command == ":signals":
        print(_format_signals(session.last_signals), file=out)
    elif command == ":save":
        if not arg:
            print("usage: :save <file>", file=out)
        else:
            save_snapshot(session.graph, arg)
            print(f"saved {session.graph.node_count()} nodes to {arg}", file=out)
    elif command == ":load":
        if not arg:
            print("usage: :load <file>", file=out)
        else:
            session.graph = load_snapshot(arg)
            session.activation = ActivationState(session.activation.params)
            session.recent_inputs.clear()
            print(f"loaded {session.graph.node_count()} nodes from {arg}", file=out)
    else:
        print(f"unknown command {command}; {_HINT}", file=out)
    return session


def repl(session: Session | None = None, stdin=None, stdout=None) -> int:
    """Run the loop until :quit or EOF. Returns the process exit code."""
    session = session or Session()
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout

    print("cogkg teaching session; " + _HINT, file=out)
    while True:
        print("> ", end="", file=out, flush=True)
        line = stdin.readline()
        if not line:
            print("", file=out)
            return 0
        line = line.strip()
        if not line:
            continue
        if line.startswith(":"):
            result = _meta(session, line, out)
            if result is None:
                return 0
            session = result
            continue
        turn = session.say(line)
        if turn.kind == "error":
            print(f"?! {turn.text}  ({_HINT})", file=out)
        else:
            print(turn.text, file=out)
        print(_format_signals(turn.signals), file=out)
