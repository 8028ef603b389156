import json

from typer.testing import CliRunner

from app.main import app
from app.services.runner_service import RunnerService

runner = CliRunner()


class TestCheckCli:
    """Testes unitários para o comando check"""

    def test_quick_check(self, tmp_path):
        """Testa a suíte rápida com saída 0"""
        result = runner.invoke(app, ["check", "--quick", "--out", str(tmp_path)])

        assert result.exit_code == 0
        resumo = json.loads((tmp_path / "check" / "summary.json").read_text())
        assert resumo["params"] == {"quick": True, "seed": 0}
        assert all(a["pass"] for a in resumo["assertions"])

    def test_help_lists_commands(self):
        """Testa a ajuda da aplicação"""
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        assert "run" in result.output
        assert "check" in result.output

    def test_container_builds_runner(self, container):
        """Testa a montagem do runner pelo container de DI"""
        runner_service = container.runner_service()

        assert isinstance(runner_service, RunnerService)
        assert runner_service.experiment_service.lattice_service is container.lattice_service()
