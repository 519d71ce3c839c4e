"""Command modules, aggregated into one Typer application."""

import logging

import typer

from ..config import get_settings
from .bench import router as bench_router
from .exact import router as exact_router
from .render import router as render_router
from .solve import router as solve_router

app = typer.Typer(
    name="terrain-guard",
    help="Guard orthogonal 1.5D terrains: sweep 2-approximation, exact oracle, generator and rendering.",
    no_args_is_help=True,
)


@app.callback()
def main(
    log_level: str | None = typer.Option(None, "--log-level", help="Logging level (default from settings)"),
) -> None:
    logging.basicConfig(
        level=(log_level or get_settings().log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


for _router in (solve_router, exact_router, bench_router, render_router):
    app.registered_commands.extend(_router.registered_commands)

__all__ = ["app"]
