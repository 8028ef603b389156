from pathlib import Path

import numpy as np

from app.core.config.settings import settings
from app.model.field_model import WaveField
from app.model.grid_model import SpacetimeGrid
from app.repository.base_repository import BaseRepository


class FieldRepository(BaseRepository):
    """Campo de onda como CSV (s, i_x, i_t, re, im) mais cabeçalho JSON com a grade"""

    def save(self, field: WaveField, directory: Path, name: str = "field") -> Path:
        self.ensure_dir(directory)
        self.write_json(
            directory / f"{name}.json",
            {
                "schema_version": settings.SCHEMA_VERSION,
                "grid": field.grid.model_dump(),
                "n_s": field.n_s,
            },
        )
        s, i_x, i_t = np.indices(field.amplitudes.shape).reshape(3, -1)
        valores = field.amplitudes.ravel()
        linhas = zip(
            s.tolist(), i_x.tolist(), i_t.tolist(), valores.real.tolist(), valores.imag.tolist()
        )
        return self.write_csv(
            directory / f"{name}.csv", ("s", "i_x", "i_t", "re", "im"), linhas
        )

    def load(self, directory: Path, name: str = "field") -> WaveField:
        cabecalho = self.read_json(directory / f"{name}.json")
        grid = SpacetimeGrid(**cabecalho["grid"])
        amplitudes = np.zeros((cabecalho["n_s"], grid.n_x, grid.n_t), dtype=complex)
        for linha in self.read_csv(directory / f"{name}.csv"):
            amplitudes[int(linha["s"]), int(linha["i_x"]), int(linha["i_t"])] = complex(
                float(linha["re"]), float(linha["im"])
            )
        return WaveField(grid=grid, amplitudes=amplitudes)
