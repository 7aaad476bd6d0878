"""End-to-end: the CLI as a thin client of a real HTTP server."""

import json
import socket
import subprocess
import sys
import time

import httpx
import pytest


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture(scope="module")
def server():
    port = _free_port()
    proc = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "uvicorn",
            "polaris.service:app",
            "--host",
            "127.0.0.1",
            "--port",
            str(port),
            "--log-level",
            "error",
        ],
        cwd="/root/pkg",
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    url = f"http://127.0.0.1:{port}"
    try:
        for _ in range(100):
            try:
                if httpx.get(url + "/health", timeout=1.0).status_code == 200:
                    break
            except httpx.TransportError:
                time.sleep(0.1)
        else:
            pytest.skip("server did not come up")
        yield url
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "polaris.cli", *args],
        capture_output=True,
        text=True,
        cwd="/root/pkg",
    )


class TestRemote:
    def test_analyze_matches_in_process(self, server):
        remote = run_cli(["--server", server, "analyze", "fixtures/g_note.graph"])
        local = run_cli(["analyze", "fixtures/g_note.graph"])
        assert remote.returncode == local.returncode == 0
        assert json.loads(remote.stdout) == json.loads(local.stdout)

    def test_exit_codes_propagate(self, server, tmp_path):
        bad = tmp_path / "bad.graph"
        bad.write_text("vertex a 1\n")
        proc = run_cli(["--server", server, "analyze", str(bad)])
        assert proc.returncode == 3

    def test_unreachable_server_exit_1(self):
        proc = run_cli(["--server", "http://127.0.0.1:9", "fixtures"])
        assert proc.returncode == 1
        assert "transport failure" in proc.stderr

    def test_export_remote(self, server):
        proc = run_cli(
            ["--server", server, "export", "fixtures/g_join.graph", "--what", "scott"]
        )
        assert proc.returncode == 0
        assert 'label="degree 3"' in proc.stdout
