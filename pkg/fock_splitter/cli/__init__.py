from fock_splitter.cli.commands import cli

__all__ = ["cli"]
