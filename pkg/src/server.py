#!/usr/bin/env python3
"""
resgraph MCP Server

Serves the resolution graph analyses over MCP (stdio transport) or, with
--fastapi, as a small HTTP API.
"""

import asyncio
import logging
import os
from typing import Any

import uvicorn
from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from mcp.server.stdio import stdio_server
from pydantic import BaseModel, Field

from blowup import execute
from classify import full_report
from formats import parse_graph, parse_script, report_to_json, serialize_graph
from graph_model import build_matrix, search_star
from mcp_service import mcp_service
from settings import get_settings

# Configure logging
logging.basicConfig(level=os.environ.get("LOG_LEVEL", "INFO").upper())
logger = logging.getLogger(__name__)


class AnalyzeRequest(BaseModel):
    graph_text: str


class SearchStarRequest(BaseModel):
    genus: int = Field(ge=0)
    max_d: int | None = Field(default=None, ge=1)


class BlowupRequest(BaseModel):
    script_text: str


# FastAPI app for HTTP interface (optional)
app = FastAPI(
    title="resgraph MCP Server",
    description="Exact analysis of dual resolution graphs of surface singularities",
    version="1.0.0"
)


@app.get("/")
async def root():
    """Root endpoint for health check."""
    return {"message": "resgraph MCP Server is running", "status": "healthy"}


@app.get("/tools")
async def get_tools():
    """Get available tools via HTTP."""
    tools = await mcp_service.list_tools()
    return {"tools": [{"name": tool.name, "description": tool.description} for tool in tools]}


@app.post("/analyze")
async def http_analyze(request: AnalyzeRequest) -> dict[str, Any]:
    """Full singularity report for the posted graph."""
    try:
        report = full_report(parse_graph(request.graph_text))
    except ValueError as e:
        logger.error(f"Analyze request failed: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    return report_to_json(report)


@app.post("/search-star")
async def http_search_star(request: SearchStarRequest) -> dict[str, Any]:
    max_d = request.max_d if request.max_d is not None else get_settings().search_star_max_d
    result = search_star(request.genus, max_d)
    if result is None:
        return {"genus": request.genus, "max_d": max_d, "found": False}
    return result.model_dump()


@app.post("/blowup")
async def http_blowup(request: BlowupRequest) -> dict[str, Any]:
    try:
        _, graph = execute(parse_script(request.script_text))
    except ValueError as e:
        logger.error(f"Blowup request failed: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    return {"graph_text": serialize_graph(graph), "matrix": build_matrix(graph).rows()}


@app.post("/simple")
async def handle_simple_http(request: Request):
    """Handle MCP JSON-RPC over plain HTTP."""
    body = await request.body()
    if not body:
        return JSONResponse({"error": "No request body"}, status_code=400)
    try:
        request_data = await request.json()
    except ValueError as e:
        logger.error(f"Error in simple HTTP handler: {e}")
        return JSONResponse({
            "jsonrpc": "2.0",
            "error": {"code": -32700, "message": f"Parse error: {e}"}
        }, status_code=400)
    return JSONResponse(await mcp_service.handle_request(request_data))


async def main():
    """Main function to run the MCP server."""
    # Run the MCP server with stdio transport
    async with stdio_server() as (read_stream, write_stream):
        await mcp_service.server.run(
            read_stream,
            write_stream,
            mcp_service.server.create_initialization_options()
        )


def run_fastapi(host: str = "0.0.0.0", port: int = 8000):
    """Run the FastAPI server."""
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    import sys

    if len(sys.argv) > 1 and sys.argv[1] == "--fastapi":
        # Run FastAPI server
        logger.info("Starting FastAPI server on http://0.0.0.0:8000")
        run_fastapi()
    else:
        # Run MCP server with stdio
        logger.info("Starting MCP server with stdio transport")
        asyncio.run(main())
