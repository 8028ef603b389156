import json

import numpy as np
import pytest

from app.core.commons.exceptions import OutputUnwritable


class TestFieldRepository:
    """Testes unitários para o artefato de campo"""

    def test_save_and_load(self, field_repository, field_service, lattice_service, tmp_path):
        """Testa que o campo gravado é lido de volta sem perda"""
        grid = lattice_service.make_grid(n_x=32, n_t=64, L_x=16.0, L_t=32.0)
        field = field_service.gaussian_packet(
            grid, sd_x0=1.0, sd_t0=2.0, p0=0.5, e0_freq=1.0, spinor=[1.0, 1j]
        )

        field_repository.save(field, tmp_path)
        lido = field_repository.load(tmp_path)

        assert lido.grid == grid
        assert lido.n_s == 2
        assert np.array_equal(lido.amplitudes, field.amplitudes)

    def test_header_and_columns(self, field_repository, field_service, lattice_service, tmp_path):
        """Testa o cabeçalho JSON e as colunas do CSV"""
        grid = lattice_service.make_grid(n_x=4, n_t=4, L_x=4.0, L_t=4.0)
        field = field_service.plane_wave(grid, 0.0, 0.0)

        field_repository.save(field, tmp_path, name="onda")

        cabecalho = json.loads((tmp_path / "onda.json").read_text(encoding="utf-8"))
        assert cabecalho["schema_version"] == 1
        assert cabecalho["n_s"] == 1
        linhas = (tmp_path / "onda.csv").read_bytes().split(b"\r\n")
        assert linhas[0] == b"s,i_x,i_t,re,im"
        assert len([linha for linha in linhas if linha]) == 1 + 16

    def test_unwritable_directory(self, field_repository, packet, tmp_path):
        """Testa diretório de saída sob um arquivo comum"""
        arquivo = tmp_path / "arquivo"
        arquivo.write_text("x", encoding="utf-8")
        with pytest.raises(OutputUnwritable):
            field_repository.save(packet, arquivo / "saida")
