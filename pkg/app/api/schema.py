import json
from typing import Tuple

import typer

from app.schemas.schemas import CfvsResult, RunConfig, Subcommand
from app.utils.io import run_command

router = typer.Typer()


def run_schema(cfg: RunConfig) -> Tuple[int, str]:
    return 0, json.dumps(CfvsResult.model_json_schema(), indent=2) + "\n"


@router.command("schema")
def cmd_schema():
    """Print the JSON Schema of the solve result document."""
    run_command(run_schema, subcommand=Subcommand.SCHEMA)
