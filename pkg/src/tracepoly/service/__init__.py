"""HTTP service surface (FastAPI + pydantic) over the core package."""
