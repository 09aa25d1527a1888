"""Configuration, artifact serialization and the command-line entry point."""
