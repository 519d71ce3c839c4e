"""Command-line entry point."""

from .cli import app

if __name__ == "__main__":
    app()
