import os
import tempfile
import unittest
import uuid

from general_function import (
    NAMESPACE_UUID, SETTINGS, build_non_existing_dirs, generate_log, generate_uuid, get_threads,
    initialize_output_file, parallel_map
)


def _square(x: int) -> int:
    return x * x


class TestGeneralFunctions(unittest.TestCase):

    def test_generate_log(self):
        log = generate_log(name="test_log")
        self.assertEqual(log.name, "test_log")

    def test_settings(self):
        self.assertEqual(int(SETTINGS.get("DEFAULT_PRIME")), 5)
        self.assertGreaterEqual(get_threads(), 1)

    def test_generate_uuid(self):
        result = generate_uuid("test_value")
        self.assertIsInstance(result, str)
        self.assertEqual(len(result), 36)
        self.assertEqual(result, str(uuid.uuid5(NAMESPACE_UUID, "test_value")))
        self.assertEqual(generate_uuid("basis", added_string="ex4.3|"), generate_uuid("ex4.3|basis"))
        self.assertNotEqual(generate_uuid("basis", added_string="ex4.3|"), generate_uuid("basis"))

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "nested", "report.json")
            initialize_output_file(path)
            self.assertTrue(os.path.isdir(os.path.dirname(path)))
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("{}")
            initialize_output_file(path)
            self.assertFalse(os.path.exists(path))
        self.assertTrue(build_non_existing_dirs(""))

    def test_parallel_map_keeps_order(self):
        self.assertEqual(parallel_map(_square, range(5), desc="squares", threads=1), [0, 1, 4, 9, 16])
        self.assertEqual(parallel_map(_square, [3], desc="squares", threads=4), [9])


if __name__ == "__main__":
    unittest.main()
