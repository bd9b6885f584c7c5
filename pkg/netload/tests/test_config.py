import json
import tempfile
from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from netload import config, simulator
from netload.exceptions import ArtifactIOError, InvalidConfig


class ConfigFileTestCase(SimpleTestCase):

    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = Path(tmp.name)

    def write_json(self, name, data):
        path = self.tmp / name
        path.write_text(json.dumps(data), encoding='utf-8')
        return path


class WorkloadConfigTests(ConfigFileTestCase):

    def test_preset_by_name(self):
        self.assertIs(config.load_workload('terasort-like'), simulator.WORKLOAD_PRESETS['terasort-like'])

    def test_unknown_name(self):
        with self.assertRaises(InvalidConfig) as ctx:
            config.load_workload('grep-like')
        self.assertIn('wordcount-like', str(ctx.exception))

    def test_full_description(self):
        path = self.write_json('logs.json', {'name': 'logs', 'input_bytes': 1 << 30, 'map_output_ratio': 0.4})
        workload = config.load_workload(str(path))
        self.assertEqual(workload.name, 'logs')
        self.assertEqual(workload.input_bytes, 1 << 30)
        self.assertEqual(workload.map_output_ratio, 0.4)
        self.assertEqual(workload.partition_skew, 0.0)
        self.assertEqual(workload.per_pair_overhead_bytes, simulator.DEFAULT_PAIR_OVERHEAD)
        self.assertEqual(workload.noise_sigma, simulator.DEFAULT_NOISE_SIGMA)

    def test_preset_with_overrides(self):
        workload = config.workload_from_dict({'preset': 'exim-like', 'noise_sigma': 0.1})
        base = simulator.preset('exim-like')
        self.assertEqual(workload, simulator.with_noise(base, 0.1))

    def test_invalid_values(self):
        for data in [{'name': 'w'}, {'name': 'w', 'input_bytes': 0},
                     {'name': 'w', 'input_bytes': 10, 'map_output_ratio': 0},
                     {'name': 'w', 'input_bytes': 10, 'noise_sigma': 1.5},
                     {'preset': 'nope'}, ['not', 'an', 'object']]:
            with self.assertRaises(InvalidConfig):
                config.workload_from_dict(data)

    def test_broken_json(self):
        path = self.tmp / 'broken.json'
        path.write_text('{"name": "w",\n "input_bytes": }', encoding='utf-8')
        with self.assertRaises(InvalidConfig) as ctx:
            config.load_workload(str(path))
        self.assertIn('line 2', str(ctx.exception))


class ClusterConfigTests(ConfigFileTestCase):

    def test_settings_default(self):
        cluster = config.load_cluster()
        self.assertEqual(cluster.num_nodes, settings.NETLOAD['NUM_NODES'])
        self.assertEqual(cluster.placement, settings.NETLOAD['PLACEMENT'])

    @override_settings(NETLOAD={**settings.NETLOAD, 'NUM_NODES': 9, 'PLACEMENT': 'random'})
    def test_settings_override(self):
        self.assertEqual(config.default_cluster(), simulator.ClusterSpec(num_nodes=9, placement='random'))

    def test_racked_cluster_file(self):
        path = self.write_json('cluster.json', {
            'num_nodes': 4, 'placement': 'random',
            'rack_map': {'0': 'a', '1': 'a', '2': 'b', '3': 'b'},
            'cross_rack_weight': 2.0,
        })
        cluster = config.load_cluster(path)
        self.assertEqual(cluster.rack_map, {0: 'a', 1: 'a', 2: 'b', 3: 'b'})
        self.assertEqual(cluster.racks().tolist(), [0, 0, 1, 1])
        self.assertEqual(cluster.cross_rack_weight, 2.0)

    def test_minimal_cluster(self):
        cluster = config.cluster_from_dict({'num_nodes': 3})
        self.assertEqual(cluster, simulator.ClusterSpec(num_nodes=3))

    def test_invalid_clusters(self):
        for data in [{}, {'num_nodes': 0}, {'num_nodes': 2, 'placement': 'spread'},
                     {'num_nodes': 2, 'cross_rack_weight': 0.5},
                     {'num_nodes': 3, 'rack_map': {'0': 'a', '1': 'a'}},
                     {'num_nodes': 2, 'rack_map': {'first': 'a', '1': 'a'}}]:
            with self.assertRaises(InvalidConfig):
                config.cluster_from_dict(data)

    def test_missing_file(self):
        with self.assertRaises(ArtifactIOError):
            config.load_cluster(self.tmp / 'absent.json')

    def test_file_that_is_not_utf8(self):
        path = self.tmp / 'cluster.json'
        path.write_bytes(b'{"num_nodes": "\xff\xfe"}')
        with self.assertRaises(InvalidConfig) as ctx:
            config.load_cluster(path)
        self.assertIn(str(path), str(ctx.exception))


class GridSpecificationTests(SimpleTestCase):

    def test_stepped_range(self):
        self.assertEqual(config.parse_values('4:32:4'), [4, 8, 12, 16, 20, 24, 28, 32])

    def test_unit_step(self):
        self.assertEqual(config.parse_values('1:3'), [1, 2, 3])

    def test_explicit_list(self):
        self.assertEqual(config.parse_values('4, 8,16'), [4, 8, 16])
        self.assertEqual(config.parse_values('4'), [4])

    def test_invalid_grids(self):
        for text in ['4:3', '0:4', 'a:b', '4,4', '4:32:0', '', '4,-8']:
            with self.assertRaises(InvalidConfig):
                config.parse_values(text)

    def test_range(self):
        self.assertEqual(config.parse_range('4:32'), (4, 32))

    def test_invalid_ranges(self):
        for text in ['5:4', 'x:9', '0:3', '1:2:3']:
            with self.assertRaises(InvalidConfig):
                config.parse_range(text)
