"""Batch CLI: transfer, serve, and fixture/gallery generation."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import pipeline, synthetic
from .pipeline import ConfigError, PipelineStageError

STRUCTURE_MODES = ("illumination", "literal", "keep-input")


@click.group()
def main():
    """Facial makeup transfer by CIELAB layer decomposition."""


@main.command()
@click.option("--input", "input_", type=click.Path(), help="Input face image.")
@click.option("--input-landmarks", type=click.Path())
@click.option("--input-labels", type=click.Path())
@click.option("--reference", type=click.Path(), help="Reference makeup image.")
@click.option("--reference-landmarks", type=click.Path())
@click.option("--reference-labels", type=click.Path())
@click.option("--out", type=click.Path())
@click.option("--alpha", type=float, default=None, help="Color blend weight [0, 1].")
@click.option("--beta", type=float, default=None, help="Illumination strength.")
@click.option(
    "--structure-mode", type=click.Choice(STRUCTURE_MODES), default=None
)
@click.option("--illumination/--no-illumination", default=None)
@click.option("--airbangs", is_flag=True, default=None)
@click.option("--skip-preprocess", is_flag=True, default=None)
@click.option("--soften-sigma", type=float, default=None)
@click.option("--dump-layers", type=click.Path(), default=None,
              help="Write debug layer images into this directory.")
@click.option("--config", "config_file", type=click.Path(), default=None,
              help="JSON config file; explicit flags override its keys.")
def transfer(config_file, **flags):
    """Run a single makeup transfer."""
    doc = {}
    if config_file:
        try:
            doc = pipeline.load_config_file(config_file)
        except (OSError, json.JSONDecodeError, ConfigError) as e:
            click.echo(f"error: config file: {e}", err=True)
            sys.exit(2)

    renames = {"input_": "input", "illumination": "illumination"}
    for key, value in flags.items():
        if value is None:
            continue
        doc[renames.get(key, key)] = value

    missing = [
        k
        for k in (
            "input",
            "input_landmarks",
            "input_labels",
            "reference",
            "reference_landmarks",
            "reference_labels",
            "out",
        )
        if k not in doc
    ]
    if missing:
        click.echo(f"error: missing required inputs: {', '.join(missing)}", err=True)
        sys.exit(2)

    try:
        config = pipeline.config_from_dict(doc)
        report = pipeline.run_pipeline(config)
    except ConfigError as e:
        click.echo(f"error: config: {e}", err=True)
        sys.exit(2)
    except PipelineStageError as e:
        click.echo(f"error: stage '{e.stage}': {e.cause}", err=True)
        sys.exit(1)

    for stage in report.stages:
        click.echo(f"{stage.name:<12} {stage.seconds * 1000:8.1f} ms")
    click.echo(f"{'total':<12} {report.total_seconds * 1000:8.1f} ms")
    for name, iters in report.solver_iterations.items():
        click.echo(f"{name}: {iters} CG iterations")
    click.echo(f"wrote {report.output_path}")


@main.command()
@click.option("--bind", default="127.0.0.1:8000", show_default=True)
@click.option("--assets", type=click.Path(), default=None,
              help="Directory with references/ gallery and optional ui/ build.")
def serve(bind, assets):
    """Run the HTTP service for the studio UI."""
    from .service import serve as run_serve

    run_serve(bind, assets)


@main.command("make-fixtures")
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--width", type=int, default=224, show_default=True)
@click.option("--height", type=int, default=224, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--fringe", is_flag=True, help="Give the reference air-bangs.")
def make_fixtures(out_dir, width, height, seed, fringe):
    """Generate a synthetic input/reference fixture pair."""
    inp, ref = synthetic.make_fixture_pair(width, height, seed, fringe=fringe)
    paths = synthetic.write_fixture(out_dir, "input", inp)
    paths.update(
        {f"ref_{k}": v for k, v in synthetic.write_fixture(out_dir, "reference", ref).items()}
    )
    for p in paths.values():
        click.echo(f"wrote {p}")


@main.command("make-gallery")
@click.option("--assets", type=click.Path(), required=True)
@click.option("--width", type=int, default=224, show_default=True)
@click.option("--height", type=int, default=224, show_default=True)
def make_gallery(assets, width, height):
    """Generate the bundled reference gallery consumed by GET /references."""
    base = Path(assets) / "references"
    base.mkdir(parents=True, exist_ok=True)
    entries = []
    styles = [
        ("classic", 1, False),
        ("evening", 7, False),
        ("airbangs", 13, True),
    ]
    for name, seed, fringe in styles:
        _, ref = synthetic.make_fixture_pair(width, height, seed, fringe=fringe)
        synthetic.write_fixture(base, name, ref)
        entries.append(
            {
                "id": name,
                "name": name.replace("_", " ").title(),
                "image": f"{name}.png",
                "thumbnail": f"{name}.png",
                "landmarks": f"{name}.landmarks.json",
                "labels": f"{name}.labels.png",
            }
        )
    with open(base / "manifest.json", "w") as f:
        json.dump(entries, f, indent=2)
    click.echo(f"wrote {base / 'manifest.json'} ({len(entries)} references)")


if __name__ == "__main__":
    main()
