# Copyright 2025 Voltstriker

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
This module contains the implementation of the ProbeApp class.

The ProbeApp class owns the argument parser, loads the subcommands from the
commands directory, builds the run configuration and maps toolkit errors to
process exit codes.

Classes
-------
Command
    Base class of a subcommand.
ProbeApp
    The command-line application.
"""

import argparse
import importlib
import json
import logging
import os
import platform
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from models.run_config import RunConfig  # pylint: disable=import-error,no-name-in-module
from models.spectral_density import SpectralDensity  # pylint: disable=import-error,no-name-in-module
from utils.errors import ConfigError, SdProbeError  # pylint: disable=import-error,no-name-in-module
from utils.storage import ResultStore  # pylint: disable=import-error,no-name-in-module


class Command:
    """
    Base class of a subcommand.

    Subclasses set ``name`` and ``description`` and implement ``run``. A
    command module exposes ``setup(app)`` which registers its commands.

    Attributes
    ----------
    app : ProbeApp
        The application the command is registered with.
    """

    name: str = ""
    description: str = ""

    def __init__(self, app: "ProbeApp") -> None:
        self.app = app
        self.logger = app.logger.getChild(self.name) if self.name else app.logger

    def configure(self, parser: argparse.ArgumentParser) -> None:
        """Add command-specific arguments."""

    def needs_seed(self, cfg: RunConfig, args: argparse.Namespace) -> bool:  # pylint: disable=unused-argument
        """Whether the run draws random numbers."""
        return False

    def run(self, cfg: RunConfig, store: ResultStore, args: argparse.Namespace) -> int:
        """
        Execute the command.

        Parameters
        ----------
        cfg : RunConfig
            Run configuration with flag overrides applied.
        store : ResultStore
            Output directory of the run.
        args : argparse.Namespace
            Parsed command-line arguments.

        Returns
        -------
        int
            Process exit code.
        """
        raise NotImplementedError

    @staticmethod
    def require_sd(cfg: RunConfig) -> SpectralDensity:
        """
        Spectral density of the run, reading a tabulated one from disk.

        Raises
        ------
        ConfigError
            If the configuration names no spectral density.
        SpectrumFileError
            If the tabulated file is malformed.
        """
        if cfg.sd is not None:
            return cfg.sd
        if cfg.sd_path is not None:
            return ResultStore.read_tabulated_sd(cfg.sd_path)
        raise ConfigError("This command needs an 'sd' section")


class ProbeApp:
    """
    Command-line application of the spectral-density probe.

    Attributes
    ----------
    logger : logging.Logger
        The application logger.
    parser : argparse.ArgumentParser
        Top-level parser with one subparser per command.
    commands : dict[str, Command]
        Registered commands by name.
    app_dir : pathlib.Path
        The application directory path.

    Methods
    -------
    add_command(command_cls)
        Registers a subcommand.
    load_commands()
        Loads all command modules from the commands directory.
    load_config(args)
        Builds the run configuration from the config file and flags.
    run(argv)
        Parses arguments, runs the selected command and returns the exit code.
    """

    def __init__(self, logger: logging.Logger) -> None:
        """
        Initialise the application.

        Parameters
        ----------
        logger : logging.Logger
            The logger instance for application events.
        """
        self.logger = logger
        self.app_dir = Path(os.path.dirname(os.path.abspath(__file__))).parent
        self.parser = argparse.ArgumentParser(prog="sdprobe", description="Forward and inverse spectral-density probe for waveguide QED.")
        self.subparsers = self.parser.add_subparsers(dest="command", required=True, metavar="command")
        self.commands: dict[str, Command] = {}

    def add_command(self, command_cls: type[Command]) -> None:
        """
        Registers a subcommand together with the shared flags.

        Parameters
        ----------
        command_cls : type[Command]
            The command class to instantiate.
        """
        command = command_cls(self)
        if command.name in self.commands:
            raise ValueError(f"Command '{command.name}' is already registered")

        parser = self.subparsers.add_parser(command.name, help=command.description, description=command.description)
        parser.add_argument("--config", help="JSON run configuration")
        parser.add_argument("--out", help="output directory")
        parser.add_argument("--grid", help="frequency grid as min:max:count")
        parser.add_argument("--seed", type=int, help="seed of every random draw")
        parser.add_argument("--noise", help="Gaussian noise as sigmaR,sigmaT")
        command.configure(parser)
        self.commands[command.name] = command

    def load_commands(self) -> None:
        """
        Loads all command modules from the commands directory.

        Each module's ``setup(app)`` is called in file-name order. Modules that
        fail to load are logged and skipped.
        """
        commands_dir = self.app_dir / "commands"
        loaded = []
        for file in sorted(commands_dir.glob("*.py")):
            if file.name.startswith("_"):
                continue
            extension = file.stem
            try:
                module = importlib.import_module(f"commands.{extension}")
                module.setup(self)
                loaded.append(extension)
            except Exception as e:  # pylint: disable=broad-exception-caught
                exception = f"{type(e).__name__}: {e}"
                self.logger.error("Failed to load command module %s\n%s", extension, exception)

        self.logger.debug("Loaded command modules: %s", ", ".join(loaded))

    def load_config(self, args: argparse.Namespace) -> RunConfig:
        """
        Builds the run configuration from the config file and flags.

        Parameters
        ----------
        args : argparse.Namespace
            Parsed command-line arguments.

        Returns
        -------
        RunConfig
            The configuration with flag overrides applied.

        Raises
        ------
        ConfigError
            If the file cannot be read or the configuration is invalid.
        """
        data = {}
        if args.config:
            try:
                with open(args.config, "r", encoding="utf-8") as handle:
                    data = json.load(handle)
            except OSError as ex:
                raise ConfigError(f"Cannot read configuration {args.config}: {ex}") from ex
            except json.JSONDecodeError as ex:
                raise ConfigError(f"Configuration {args.config} is not valid JSON: {ex}") from ex

        try:
            cfg = RunConfig.from_dict(data, default_output=os.getenv("SDPROBE_OUT", "out"))
            return cfg.with_overrides(grid=args.grid, seed=args.seed, noise=args.noise, output=args.out)
        except (KeyError, TypeError, ValueError) as ex:
            raise ConfigError(f"Invalid configuration: {ex}") from ex

    def resolve_seed(self, cfg: RunConfig) -> RunConfig:
        """
        Fixes the seed of a run that draws random numbers and logs it.

        A fresh seed is drawn from the operating system when none is given, so
        every random run can be repeated from its log.

        Parameters
        ----------
        cfg : RunConfig
            Run configuration.

        Returns
        -------
        RunConfig
            The configuration with a seed.
        """
        if cfg.seed is None:
            cfg = cfg.with_overrides(seed=int(np.random.SeedSequence().entropy))  # type: ignore[arg-type]
        self.logger.info("Random seed: %d", cfg.seed)
        return cfg

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Parses arguments, runs the selected command and returns the exit code.

        Toolkit errors are logged and mapped to their exit codes; anything
        else is logged and re-raised.

        Parameters
        ----------
        argv : Sequence[str], optional
            Arguments without the program name. Defaults to ``sys.argv[1:]``.

        Returns
        -------
        int
            0 on success, 2 for configuration errors, 3 for numerical
            failures and 4 for bad input data.
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as ex:
            return ex.code if isinstance(ex.code, int) else ConfigError.exit_code

        command = self.commands[args.command]
        self.logger.debug("Python version: %s", platform.python_version())
        try:
            cfg = self.load_config(args)
            if command.needs_seed(cfg, args):
                cfg = self.resolve_seed(cfg)
            store = ResultStore(cfg.output, logger=self.logger.getChild("storage"))
            return command.run(cfg, store, args)
        except SdProbeError as ex:
            self.logger.error("Command '%s' failed: %s", command.name, ex)
            return ex.exit_code
        except Exception:
            self.logger.exception("Unexpected error in command '%s'", command.name)
            raise
