from __future__ import annotations

from typing import TYPE_CHECKING, TypeVar

if TYPE_CHECKING:
    from argparse import ArgumentParser

    from .cli import CommandRequest

from . import logger

T = TypeVar("T")


log = logger.get_logger(__name__)


# Initialization list
commands: dict[str, type[Command]] = {}


# Decorators for command registration


def register_command(cls: T) -> T:
    """
    Add a command class to the global catalogue to expose it as a subcommand.

    ### Use as decorator.

    Required property:
        name (str): Subcommand name

    Args:
        cls (Command): Command class

    Returns:
        Command: Unchanged class
    """
    assert hasattr(cls, "name") and cls.name, f"{cls} has invalid name property"  # type: ignore

    if cls.name not in commands:  # type: ignore
        commands[cls.name] = cls  # type: ignore

    return cls


# Command classes


class Command:
    """Base class for subcommands registered with the catalogue"""

    name: str = ""
    label: str = ""
    input_arguments: tuple[str, ...] = ()

    @classmethod
    def add_arguments(cls, parser: ArgumentParser):
        """
        Add subcommand specific arguments.

        Args:
            parser (ArgumentParser)
        """

    @classmethod
    def poll(cls, request: CommandRequest) -> bool:
        """
        Allow execution only for well-formed requests.

        Args:
            request (CommandRequest)

        Returns:
            bool: Request can be executed
        """
        return True

    def execute(self, request: CommandRequest) -> dict:
        """
        Run the command.

        Args:
            request (CommandRequest)

        Returns:
            dict: JSON report
        """
        raise NotImplementedError
