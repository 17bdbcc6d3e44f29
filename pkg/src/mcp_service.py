#!/usr/bin/env python3
"""
MCP Service Module

统一处理MCP协议请求的服务模块，供不同传输协议调用。
Exposes the resolution graph analyses as MCP tools.
"""

import json
import logging
import uuid
from typing import Any, Awaitable, Callable, Dict, Sequence

from mcp.server import Server
from mcp.types import TextContent, Tool

from blowup import execute
from classify import full_report
from exact_linalg import find_certificate, is_negative_definite, leading_principal_minors, negate
from formats import parse_graph, parse_script, report_to_json, report_to_text, serialize_graph
from graph_model import build_matrix, search_star
from settings import get_settings

# Configure logging
logger = logging.getLogger(__name__)

SERVER_NAME = "resgraph-mcp"
SERVER_VERSION = "1.0.0"

ToolHandler = Callable[[dict[str, Any]], Awaitable[Sequence[TextContent]]]


def _text(payload: Any) -> Sequence[TextContent]:
    if not isinstance(payload, str):
        payload = json.dumps(payload, indent=2, ensure_ascii=False)
    return [TextContent(type="text", text=payload)]


class MCPService:
    """MCP协议处理服务类"""

    def __init__(self):
        """初始化MCP服务"""
        self.server = Server(SERVER_NAME)
        self.handlers: Dict[str, ToolHandler] = {
            "analyze_graph": self.analyze_graph,
            "check_definite": self.check_definite,
            "search_star": self.search_star,
            "run_blowup_script": self.run_blowup_script,
        }
        self._setup_tools()

    def _setup_tools(self):
        """设置工具定义"""
        @self.server.list_tools()
        async def list_tools() -> list[Tool]:
            """List available tools."""
            return await self.list_tools()

        @self.server.call_tool()
        async def call_tool(name: str, arguments: dict[str, Any] | None = None) -> Sequence[TextContent]:
            """Handle tool calls."""
            handler = self.handlers.get(name)
            if handler is None:
                raise ValueError(f"Unknown tool: {name}")
            return await handler(arguments or {})

    async def list_tools(self) -> list[Tool]:
        """获取可用工具列表"""
        graph_input = {
            "type": "object",
            "properties": {
                "graph_text": {"type": "string", "description": "Graph file contents (vertex/edge lines)"},
                "format": {"type": "string", "enum": ["json", "text"]},
            },
            "required": ["graph_text"],
        }
        return [
            Tool(
                name="analyze_graph",
                description="Full singularity report for a dual resolution graph",
                inputSchema=graph_input,
            ),
            Tool(
                name="check_definite",
                description="Negative definiteness of the intersection matrix with a positive certificate",
                inputSchema=graph_input,
            ),
            Tool(
                name="search_star",
                description="Smallest d making the genus-g star of (-d)-curves negative definite",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "genus": {"type": "integer", "minimum": 0},
                        "max_d": {"type": "integer", "minimum": 1},
                    },
                    "required": ["genus"],
                },
            ),
            Tool(
                name="run_blowup_script",
                description="Run a blowup script and return the selected curves as a graph",
                inputSchema={
                    "type": "object",
                    "properties": {"script_text": {"type": "string"}},
                    "required": ["script_text"],
                },
            ),
        ]

    async def analyze_graph(self, arguments: dict[str, Any]) -> Sequence[TextContent]:
        """Analyse one graph."""
        try:
            report = full_report(parse_graph(arguments["graph_text"]))
            logger.info(f"Analysed graph with {len(report.vertices)} curves")
            if arguments.get("format") == "text":
                return _text(report_to_text(report))
            return _text(report_to_json(report))
        except ValueError as e:
            error_msg = f"Error analysing graph: {str(e)}"
            logger.error(error_msg)
            return _text(error_msg)

    async def check_definite(self, arguments: dict[str, Any]) -> Sequence[TextContent]:
        try:
            matrix = build_matrix(parse_graph(arguments["graph_text"]))
            result: dict[str, Any] = {
                "negative_definite": is_negative_definite(matrix.entries),
                "leading_minors": [str(m) for m in leading_principal_minors(negate(matrix.entries))],
            }
            found = find_certificate(negate(matrix.entries))
            if isinstance(found, list):
                result["certificate"] = [str(x) for x in found]
            return _text(result)
        except ValueError as e:
            error_msg = f"Error checking definiteness: {str(e)}"
            logger.error(error_msg)
            return _text(error_msg)

    async def search_star(self, arguments: dict[str, Any]) -> Sequence[TextContent]:
        try:
            genus = int(arguments["genus"])
            max_d = arguments.get("max_d")
            max_d = int(max_d) if max_d is not None else get_settings().search_star_max_d
            result = search_star(genus, max_d)
            if result is None:
                return _text({"genus": genus, "max_d": max_d, "found": False})
            return _text(result.model_dump())
        except ValueError as e:
            error_msg = f"Error searching star: {str(e)}"
            logger.error(error_msg)
            return _text(error_msg)

    async def run_blowup_script(self, arguments: dict[str, Any]) -> Sequence[TextContent]:
        try:
            _, graph = execute(parse_script(arguments["script_text"]))
            return _text({"graph_text": serialize_graph(graph), "matrix": build_matrix(graph).rows()})
        except ValueError as e:
            error_msg = f"Error running blowup script: {str(e)}"
            logger.error(error_msg)
            return _text(error_msg)

    def create_initialization_options(self) -> Dict[str, Any]:
        """创建初始化选项，包含会话ID"""
        session_id = str(uuid.uuid4())
        logger.info(f"Creating MCP server with session ID: {session_id}")

        return {
            "protocolVersion": "2024-11-05",
            "capabilities": {
                "tools": {}
            },
            "serverInfo": {
                "name": SERVER_NAME,
                "version": SERVER_VERSION
            },
            "sessionId": session_id
        }

    async def handle_request(self, request_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        统一处理MCP请求

        Args:
            request_data: JSON-RPC请求数据

        Returns:
            JSON-RPC响应数据
        """
        method = request_data.get("method")
        request_id = request_data.get("id")
        params = request_data.get("params", {}) or {}

        try:
            # 处理初始化请求
            if method == "initialize":
                return {
                    "jsonrpc": "2.0",
                    "id": request_id,
                    "result": self.create_initialization_options()
                }

            # 处理工具列表请求
            elif method == "tools/list":
                tools = await self.list_tools()
                return {
                    "jsonrpc": "2.0",
                    "id": request_id,
                    "result": {"tools": [tool.model_dump(exclude_none=True) for tool in tools]}
                }

            # 处理工具调用请求
            elif method == "tools/call":
                tool_name = params.get("name")
                handler = self.handlers.get(tool_name)
                if handler is None:
                    return {
                        "jsonrpc": "2.0",
                        "id": request_id,
                        "error": {"code": -32601, "message": f"Unknown tool: {tool_name}"}
                    }
                try:
                    result = await handler(params.get("arguments", {}) or {})
                except KeyError as e:
                    return {
                        "jsonrpc": "2.0",
                        "id": request_id,
                        "error": {"code": -32602, "message": f"Missing argument: {e.args[0]}"}
                    }
                return {
                    "jsonrpc": "2.0",
                    "id": request_id,
                    "result": {"content": [{"type": "text", "text": item.text} for item in result]}
                }

            # 未知方法
            else:
                return {
                    "jsonrpc": "2.0",
                    "id": request_id,
                    "error": {"code": -32601, "message": f"Method not found: {method}"}
                }

        except Exception as e:
            logger.error(f"Error handling MCP request: {e}")
            return {
                "jsonrpc": "2.0",
                "id": request_id,
                "error": {"code": -32603, "message": f"Internal error: {str(e)}"}
            }

# 创建全局MCP服务实例
mcp_service = MCPService()
