"""Command-line entry point"""

from ringlab.ore.cli import cli

if __name__ == "__main__":
    cli()
