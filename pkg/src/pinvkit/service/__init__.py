"""HTTP surface: pydantic schemas, pure handlers, and the FastAPI app."""
