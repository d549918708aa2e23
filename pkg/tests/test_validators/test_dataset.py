"""Tests for dataset file validation."""

import json
from pathlib import Path

from mmwave_channel_gen.data.dataset import save_dataset
from mmwave_channel_gen.models.channel import Link
from mmwave_channel_gen.validators.dataset import validate_dataset_file


class TestValidateDatasetFile:
    """Tests for validate_dataset_file function."""

    def test_valid_file(self, tmp_path: Path, los_link: Link, nlos_link: Link, nolink_link: Link) -> None:
        """Test a file of well-formed links."""
        path = tmp_path / "links.jsonl"
        save_dataset([los_link, nlos_link, nolink_link, nlos_link], path)

        result = validate_dataset_file(path)

        assert result.is_valid
        assert result.line_count == 4
        assert result.link_count == 4
        assert result.state_counts == {"los": 1, "nlos": 2, "nolink": 1}
        assert result.errors == []

    def test_reports_every_bad_line(self, tmp_path: Path, nlos_link: Link) -> None:
        """Test that validation continues past the first error."""
        good = json.dumps(nlos_link.to_dict())
        bad_loss = nlos_link.to_dict()
        bad_loss["paths"][1]["aoa_el"] = 95.0  # type: ignore[index]
        path = tmp_path / "links.jsonl"
        path.write_text("\n".join([good, "{broken", json.dumps(bad_loss), good]) + "\n", encoding="utf-8")

        result = validate_dataset_file(path)

        assert not result.is_valid
        assert result.line_count == 4
        assert result.link_count == 2
        assert len(result.errors) == 2
        assert result.errors[0].startswith("2: (root): invalid JSON")
        assert result.errors[1].startswith("3: paths.1.aoa_el: ")

    def test_missing_condition_field(self, tmp_path: Path) -> None:
        """Test that a record without a cell type names the field."""
        path = tmp_path / "links.jsonl"
        path.write_text(json.dumps({"d": [1.0, 2.0, 3.0], "paths": []}) + "\n", encoding="utf-8")

        result = validate_dataset_file(path)

        assert result.errors[0].startswith("1: cell_type: ")

    def test_error_cap(self, tmp_path: Path) -> None:
        """Test that collection stops after max_errors."""
        path = tmp_path / "links.jsonl"
        path.write_text("[]\n" * 10, encoding="utf-8")

        result = validate_dataset_file(path, max_errors=3)

        assert len(result.errors) == 4
        assert result.errors[-1] == "stopped after 3 errors"

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing file is reported, not raised."""
        result = validate_dataset_file(tmp_path / "absent.jsonl")

        assert not result.is_valid
        assert "file not found" in result.errors[0]

    def test_empty_file(self, tmp_path: Path) -> None:
        """Test that an empty file is valid with no links."""
        path = tmp_path / "links.jsonl"
        path.write_text("", encoding="utf-8")

        result = validate_dataset_file(path)

        assert result.is_valid
        assert result.link_count == 0

    def test_to_dict(self, tmp_path: Path, nlos_link: Link) -> None:
        """Test the serialized result layout."""
        path = tmp_path / "links.jsonl"
        save_dataset([nlos_link], path)

        data = validate_dataset_file(path).to_dict()

        assert data["is_valid"] is True
        assert data["link_count"] == 1
