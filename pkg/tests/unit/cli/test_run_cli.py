import json
import math

import pytest
from typer.testing import CliRunner

from app.main import app

runner = CliRunner()


class TestRunCli:
    """Testes unitários para o comando run"""

    @pytest.fixture
    def write_config(self, tmp_path):
        """Fixture que grava um YAML e devolve o caminho"""

        def _write(texto: str):
            caminho = tmp_path / "config.yaml"
            caminho.write_text(texto, encoding="utf-8")
            return caminho

        return _write

    def test_double_slit_passes(self, write_config, tmp_path):
        """Testa saída 0 e o resumo com o espaçamento das franjas"""
        config = write_config("experiment: double-slit\n")
        saida = tmp_path / "saida"

        result = runner.invoke(app, ["run", "--config", str(config), "--out", str(saida)])

        assert result.exit_code == 0
        resumo = json.loads((saida / "double-slit" / "summary.json").read_text())
        assert resumo["experiment"] == "double-slit"
        assert resumo["scalars"]["fringe_spacing"] == pytest.approx(math.pi / 2, rel=0.02)
        assert all(a["pass"] for a in resumo["assertions"])
        assert (saida / "double-slit" / "espectro.csv").exists()

    def test_output_dir_from_config(self, write_config, tmp_path):
        """Testa output_dir da configuração quando --out é omitido"""
        saida = tmp_path / "da-config"
        config = write_config(f"experiment: packet\noutput_dir: {saida}\n")

        result = runner.invoke(app, ["run", "-c", str(config)])

        assert result.exit_code == 0
        assert (saida / "packet" / "field.csv").exists()
        assert (saida / "packet" / "marginal_t.csv").exists()

    def test_invalid_config(self, write_config, tmp_path):
        """Testa saída 2 para configuração inválida, sem artefatos"""
        config = write_config("experiment: packet\ngrid: {n_x: 7}\n")

        result = runner.invoke(app, ["run", "-c", str(config), "-o", str(tmp_path / "x")])

        assert result.exit_code == 2
        assert not (tmp_path / "x").exists()

    def test_missing_config_option(self):
        """Testa saída 2 sem --config"""
        result = runner.invoke(app, ["run"])
        assert result.exit_code == 2

    def test_failed_assertion(self, write_config, tmp_path):
        """Testa saída 1: a varredura curta não encontra dois máximos"""
        config = write_config("experiment: delay-scan\ndelay_scan: {delay_max: 2.0}\n")

        result = runner.invoke(app, ["run", "-c", str(config), "-o", str(tmp_path)])

        assert result.exit_code == 1
        resumo = json.loads((tmp_path / "delay-scan" / "summary.json").read_text())
        assert resumo["scalars"]["period"] is None

    def test_domain_exhausted(self, write_config, tmp_path):
        """Testa saída 2 quando o pacote deixa o domínio"""
        config = write_config("experiment: ehrenfest\nehrenfest: {sigma_span: 40.0}\n")

        result = runner.invoke(app, ["run", "-c", str(config), "-o", str(tmp_path)])

        assert result.exit_code == 2

    def test_seed_override(self, write_config, tmp_path):
        """Testa que --seed sobrepõe a semente da configuração"""
        config = write_config("experiment: ordering-demo\nseed: 1\n")

        result = runner.invoke(
            app, ["run", "-c", str(config), "-o", str(tmp_path), "--seed", "9"]
        )

        assert result.exit_code == 0
        resumo = json.loads((tmp_path / "ordering-demo" / "summary.json").read_text())
        assert resumo["params"]["seed"] == 9
        assert (tmp_path / "ordering-demo" / "events.jsonl").exists()
        assert (tmp_path / "ordering-demo" / "distances.csv").exists()
