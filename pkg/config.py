from decouple import config

"""
Configuration module for environment-based runtime settings.

This module reads optional configuration values from environment variables
(or a `.env` file, via python-decouple) and exposes them for use throughout
the toolkit. These include:
- CUTOFF_OUTPUT_DIR: Default directory for CLI output files.
- CUTOFF_LOG_LEVEL: Minimum level for diagnostic messages on standard error.
- CUTOFF_SIM_WORKERS: Threads used to run Monte-Carlo replica blocks.
- CUTOFF_SIM_BLOCK_SIZE: Replicas per random substream block.

Simulation output depends on the seed, the replica count and the block size,
never on the worker count.
"""

# Directory used when a subcommand is run without --output; unset means stdout
OUTPUT_DIR = config("CUTOFF_OUTPUT_DIR", default=None)

# DEBUG, INFO, WARNING or ERROR
LOG_LEVEL = config("CUTOFF_LOG_LEVEL", default="INFO").upper()

SIM_WORKERS = config("CUTOFF_SIM_WORKERS", default=1, cast=int)

SIM_BLOCK_SIZE = config("CUTOFF_SIM_BLOCK_SIZE", default=4096, cast=int)
