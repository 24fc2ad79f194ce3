"""
Shared paths, logging and settings for the command-line tools.
"""
