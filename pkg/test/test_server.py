#!/usr/bin/env python3
"""
Test script for the resgraph HTTP interface
"""

import asyncio

import httpx

from graph_strategies import FIXTURES
from server import app


def _run(method, path, **kwargs):
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as client:
            return await client.request(method, path, **kwargs)
    return asyncio.run(go())


def test_health():
    response = _run("GET", "/")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_tools():
    names = [tool["name"] for tool in _run("GET", "/tools").json()["tools"]]
    assert "analyze_graph" in names


def test_analyze():
    response = _run("POST", "/analyze", json={"graph_text": (FIXTURES / "star_g3_d6.graph").read_text()})
    assert response.status_code == 200
    data = response.json()
    assert data["fundamental_cycle"] == [3, 1, 1, 1, 1, 1, 1]
    assert data["chi_fund"] == -3
    assert data["link"]["h1_bound"] == 4


def test_analyze_bad_graph():
    response = _run("POST", "/analyze", json={"graph_text": "edge A B\n"})
    assert response.status_code == 400
    assert "line 1" in response.json()["detail"]


def test_search_star():
    data = _run("POST", "/search-star", json={"genus": 0}).json()
    assert data["minimal_d"] == 2
    assert _run("POST", "/search-star", json={"genus": 3, "max_d": 2}).json()["found"] is False
    assert _run("POST", "/search-star", json={"genus": 1, "max_d": 0}).status_code == 422


def test_blowup():
    response = _run("POST", "/blowup", json={"script_text": (FIXTURES / "star_g2_d5.blowup").read_text()})
    assert response.status_code == 200
    assert response.json()["matrix"][1] == [1, -5, 0, 0, 0, 0]
    assert _run("POST", "/blowup", json={"script_text": "blowup_on X -> Y\n"}).status_code == 400


def test_simple_jsonrpc():
    response = _run("POST", "/simple", json={"jsonrpc": "2.0", "id": 7, "method": "initialize", "params": {}})
    assert response.json()["result"]["protocolVersion"] == "2024-11-05"
    response = _run("POST", "/simple", content=b"{not json", headers={"Content-Type": "application/json"})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == -32700
