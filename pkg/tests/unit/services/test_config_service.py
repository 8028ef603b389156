import pytest

from app.core.commons.exceptions import ConfigInvalid, ConfigSyntax
from app.schema.config_schema import ExperimentId, GridParams


class TestConfigService:
    """Testes unitários para a leitura da configuração"""

    def test_minimal_config(self, config_service):
        """Testa um experimento com todos os parâmetros padrão"""
        config = config_service.parse_config("experiment: ehrenfest\n")

        assert config.experiment == [ExperimentId.EHRENFEST]
        assert config.seed is None
        assert config.ehrenfest.sigma_span == 4.0
        assert config.grid_for(ExperimentId.EHRENFEST).n_x == 256

    def test_experiment_list_and_sections(self, config_service):
        """Testa lista de experimentos e seção com grade própria"""
        texto = (
            "experiment: [double-slit, ordering-demo]\n"
            "seed: 7\n"
            "double_slit:\n"
            "  t1: -1.0\n"
            "  t2: 3.0\n"
            "  grid: {n_x: 4, n_t: 512, L_x: 4.0, L_t: 32.0}\n"
        )
        config = config_service.parse_config(texto)

        assert config.experiment == [ExperimentId.DOUBLE_SLIT, ExperimentId.ORDERING_DEMO]
        assert config.seed == 7
        assert config.double_slit.t2 - config.double_slit.t1 == 4.0
        assert config.grid_for(ExperimentId.DOUBLE_SLIT).n_t == 512
        assert config.grid_for(ExperimentId.ORDERING_DEMO) is None

    def test_global_grid(self, config_service):
        """Testa que a grade global vale para seções sem grade explícita"""
        texto = (
            "experiment: [packet, survival]\n"
            "grid: {n_x: 64, n_t: 64, L_x: 16.0, L_t: 16.0}\n"
            "survival:\n"
            "  grid: {n_x: 4, n_t: 256, L_x: 4.0, L_t: 64.0}\n"
        )
        config = config_service.parse_config(texto)

        assert config.grid_for(ExperimentId.PACKET) == GridParams(
            n_x=64, n_t=64, L_x=16.0, L_t=16.0
        )
        assert config.grid_for(ExperimentId.SURVIVAL).n_t == 256

    def test_grid_not_power_of_two(self, config_service):
        """Testa a mensagem com o caminho da chave"""
        with pytest.raises(ConfigInvalid) as e:
            config_service.parse_config("experiment: packet\ngrid: {n_x: 7}\n")
        assert "grid.n_x: not a power of two" in e.value.errors

    def test_unknown_key(self, config_service):
        """Testa chaves desconhecidas"""
        with pytest.raises(ConfigInvalid) as e:
            config_service.parse_config("experiment: packet\nfoo: 1\n")
        assert e.value.errors == ["foo: unknown key"]

    def test_all_errors_are_reported(self, config_service):
        """Testa que todos os erros são coletados de uma vez"""
        texto = (
            "experiment: [packet, inexistente]\n"
            "packet:\n"
            "  sd_t: -1\n"
            "  n_s: 3\n"
        )
        with pytest.raises(ConfigInvalid) as e:
            config_service.parse_config(texto)

        caminhos = {erro.split(":")[0] for erro in e.value.errors}
        assert caminhos == {"experiment.1", "packet.sd_t", "packet.n_s"}
        assert e.value.exit_code == 2

    def test_slit_order(self, config_service):
        """Testa t2 < t1 na seção double_slit"""
        with pytest.raises(ConfigInvalid) as e:
            config_service.parse_config(
                "experiment: double-slit\ndouble_slit: {t1: 2.0, t2: -2.0}\n"
            )
        assert e.value.errors == ["double_slit: t2 must not precede t1"]

    def test_missing_experiment(self, config_service):
        """Testa documento vazio e experimento ausente"""
        with pytest.raises(ConfigInvalid) as e:
            config_service.parse_config("")
        assert e.value.errors == ["experiment: Field required"]

    def test_syntax_error_position(self, config_service):
        """Testa linha e coluna do erro de sintaxe"""
        with pytest.raises(ConfigSyntax) as e:
            config_service.parse_config("a: b: c\n")
        assert e.value.line == 1
        assert e.value.column is not None

    def test_top_level_list(self, config_service):
        """Testa documento que não é um mapeamento"""
        with pytest.raises(ConfigInvalid) as e:
            config_service.parse_config("- packet\n- check\n")
        assert e.value.errors == ["<raiz>: expected a mapping of sections"]

    def test_read_from_file(self, config_service, tmp_path):
        """Testa a leitura de arquivo e de caminho inexistente"""
        caminho = tmp_path / "run.yaml"
        caminho.write_text("experiment: lorentz\nseed: 3\n", encoding="utf-8")

        assert config_service.parse_config(caminho).seed == 3
        with pytest.raises(ConfigInvalid):
            config_service.parse_config(tmp_path / "faltando.yaml")
