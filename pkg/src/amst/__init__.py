"""Executable finite abstract model structures."""
