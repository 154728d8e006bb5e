import json
import random

import pytest

from tempograph import (
    BusScenario,
    ComputingElement,
    DistributedScenario,
    FileFormatError,
    TimePoint,
    build_one_bit_adder,
    completion_times,
    dispersion_report,
    format_bus_csv,
    format_distributed_csv,
    format_history_csv,
    format_surface_csv,
    format_sweep_csv,
    format_timeline_csv,
    history_table,
    parse_netlist,
    read_bus_scenario,
    read_distributed_scenario,
    read_netlist,
    read_processor_csv,
    simulate,
    simulate_bus,
    simulate_distributed,
)

ADDER_TEXT = """\
# one-bit adder, all elements at the origin
INPUT a 0 0
INPUT b 0 0
INPUT cin 0 0

GATE AND1 AND 0 0 1 aANDb a b
GATE XOR1 XOR 0 0 1 aXORb a b
GATE AND2 AND 0 0 1 cinANDaXORb cin aXORb
GATE XOR2 XOR 0 0 1 sum aXORb cin
GATE OR1 OR 0 0 1 cout aANDb cinANDaXORb

OUTPUT sum sum
OUTPUT cout cout

SET a 0 1
SET b 0 1
SET cin 0 1
"""


class TestNetlistParsing:
    def test_adder_roundtrip(self):
        netlist = parse_netlist(ADDER_TEXT)
        reference = build_one_bit_adder(stimuli={"a": 1, "b": 1, "cin": 1})
        assert simulate(netlist) == simulate(reference)
        completions = completion_times(simulate(netlist), netlist.outputs)
        assert completions["sum"].time == 2.0
        assert completions["cout"].time == 3.0

    def test_keywords_case_insensitive(self):
        netlist = parse_netlist(
            "input src 0 0\n"
            "gate B1 buf 1 0 0.5 out src\n"
            "output y out\n"
            "set src 0 1\n"
        )
        assert simulate(netlist)[0].time == 1.5

    def test_comments_and_blank_lines(self):
        netlist = parse_netlist(
            "\n# header comment\nINPUT a 0 0   # trailing comment\n\n"
        )
        assert "a" in netlist.inputs

    def test_unknown_statement_names_line(self):
        with pytest.raises(FileFormatError) as excinfo:
            parse_netlist("INPUT a 0 0\nWIRE a b\n", source="demo.net")
        assert "demo.net, line 2" in str(excinfo.value)

    def test_unknown_gate_kind(self):
        with pytest.raises(FileFormatError) as excinfo:
            parse_netlist("INPUT a 0 0\nGATE g NAND 0 0 1 y a a\n")
        assert "line 2" in str(excinfo.value)

    def test_bad_arity_names_line(self):
        with pytest.raises(FileFormatError) as excinfo:
            parse_netlist("INPUT a 0 0\nINPUT b 0 0\nGATE g NOT 0 0 1 y a b\n")
        assert "line 3" in str(excinfo.value)

    def test_non_numeric_coordinate(self):
        with pytest.raises(FileFormatError) as excinfo:
            parse_netlist("INPUT a zero 0\n")
        assert "line 1" in str(excinfo.value)

    def test_bad_stimulus_value(self):
        with pytest.raises(FileFormatError):
            parse_netlist("INPUT a 0 0\nSET a 0 2\n")

    def test_duplicate_input(self):
        with pytest.raises(FileFormatError):
            parse_netlist("INPUT a 0 0\nINPUT a 1 0\n")

    def test_duplicate_output(self):
        with pytest.raises(FileFormatError):
            parse_netlist(
                "INPUT a 0 0\nGATE g BUF 0 0 1 y a\nOUTPUT o y\nOUTPUT o y\n"
            )

    def test_whole_netlist_errors_name_source(self):
        # the cycle is only detectable once the whole file is read
        text = (
            "GATE g1 NOT 0 0 1 y1 y2\n"
            "GATE g2 NOT 0 0 1 y2 y1\n"
        )
        with pytest.raises(FileFormatError) as excinfo:
            parse_netlist(text, source="loop.net")
        message = str(excinfo.value)
        assert message.startswith("loop.net")
        assert "cycle" in message

    def test_read_netlist_names_path(self, tmp_path):
        path = tmp_path / "adder.net"
        path.write_text(ADDER_TEXT)
        netlist = read_netlist(path)
        assert len(netlist.gates) == 5
        bad = tmp_path / "bad.net"
        bad.write_text("NOISE\n")
        with pytest.raises(FileFormatError) as excinfo:
            read_netlist(bad)
        assert str(bad) in str(excinfo.value)


class TestProcessorCsv:
    GOOD = (
        "name,year,transistors,die_area_mm2,clock_mhz\n"
        "i8008,1972,3500,15.2,0.5\n"
        "i80486,1989,1180000,81,25\n"
    )

    def write(self, tmp_path, text, name="procs.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    def test_units_convert_to_si(self, tmp_path):
        specs = read_processor_csv(self.write(tmp_path, self.GOOD))
        assert [s.name for s in specs] == ["i8008", "i80486"]
        assert specs[0].die_area == pytest.approx(15.2e-6, rel=1e-12)
        assert specs[0].clock_frequency == pytest.approx(0.5e6, rel=1e-12)
        assert specs[0].clock_period == pytest.approx(2e-6, rel=1e-12)

    def test_feeds_history_table(self, tmp_path):
        specs = read_processor_csv(self.write(tmp_path, self.GOOD))
        rows = history_table(specs)
        assert [row[0] for row in rows] == [1972, 1989]
        report = dispersion_report(specs[0])
        assert rows[0][1:] == (report.proc_transfer_rel, report.cache_transfer_rel,
                               report.dispersion)

    def test_header_must_match(self, tmp_path):
        bad = self.GOOD.replace("die_area_mm2", "area")
        with pytest.raises(FileFormatError) as excinfo:
            read_processor_csv(self.write(tmp_path, bad))
        assert "header" in str(excinfo.value)

    def test_empty_and_header_only(self, tmp_path):
        with pytest.raises(FileFormatError):
            read_processor_csv(self.write(tmp_path, ""))
        with pytest.raises(FileFormatError):
            read_processor_csv(
                self.write(tmp_path, "name,year,transistors,die_area_mm2,clock_mhz\n"))

    def test_bad_cell_names_row_and_column(self, tmp_path):
        bad = self.GOOD + "pentium,notayear,3100000,294,60\n"
        with pytest.raises(FileFormatError) as excinfo:
            read_processor_csv(self.write(tmp_path, bad))
        assert "row 4" in str(excinfo.value)
        assert "year" in str(excinfo.value)

    def test_wrong_field_count(self, tmp_path):
        bad = self.GOOD + "pentium,1993\n"
        with pytest.raises(FileFormatError) as excinfo:
            read_processor_csv(self.write(tmp_path, bad))
        assert "row 4" in str(excinfo.value)

    def test_invalid_record_names_row(self, tmp_path):
        bad = self.GOOD + "ghost,1993,-5,294,60\n"
        with pytest.raises(FileFormatError) as excinfo:
            read_processor_csv(self.write(tmp_path, bad))
        assert "row 4" in str(excinfo.value)


class TestBusScenarioJson:
    GOOD = """\
    {
      "cores": [
        {"x": -0.3, "y": 0, "t_p": 1.0},
        {"id": "far_core", "x": 0.6, "y": 0, "t_p": 1.0}
      ],
      "bus": {"x": 0, "y": 0.5},
      "word_transfer_time": 0.2
    }
    """

    def write(self, tmp_path, text, name="bus.json"):
        path = tmp_path / name
        path.write_text(text)
        return path

    def test_good_scenario(self, tmp_path):
        scenario = read_bus_scenario(self.write(tmp_path, self.GOOD))
        assert [c.id for c in scenario.cores] == ["core0", "far_core"]
        assert scenario.cores[0].position == TimePoint(-0.3, 0.0)
        assert scenario.bus_position == TimePoint(0.0, 0.5)
        assert simulate_bus(scenario).grant_order == ("core0", "far_core")

    def test_not_json(self, tmp_path):
        with pytest.raises(FileFormatError):
            read_bus_scenario(self.write(tmp_path, "{cores: oops"))

    def test_top_level_must_be_object(self, tmp_path):
        with pytest.raises(FileFormatError):
            read_bus_scenario(self.write(tmp_path, "[1, 2]"))

    def test_missing_keys(self, tmp_path):
        with pytest.raises(FileFormatError) as excinfo:
            read_bus_scenario(self.write(tmp_path, '{"bus": {"x": 0, "y": 0}}'))
        assert "cores" in str(excinfo.value)
        with pytest.raises(FileFormatError) as excinfo:
            read_bus_scenario(self.write(
                tmp_path, '{"cores": [{"x": 0, "y": 0, "t_p": 1}]}'))
        assert "bus" in str(excinfo.value)

    def test_core_entry_must_be_object(self, tmp_path):
        text = '{"cores": [3], "bus": {"x": 0, "y": 0}, "word_transfer_time": 0}'
        with pytest.raises(FileFormatError) as excinfo:
            read_bus_scenario(self.write(tmp_path, text))
        assert "cores[0]" in str(excinfo.value)

    def test_boolean_is_not_a_number(self, tmp_path):
        text = ('{"cores": [{"x": 0, "y": 0, "t_p": true}], '
                '"bus": {"x": 0, "y": 0}, "word_transfer_time": 0}')
        with pytest.raises(FileFormatError):
            read_bus_scenario(self.write(tmp_path, text))

    def test_optional_z(self, tmp_path):
        text = ('{"cores": [{"x": 0, "y": 0, "z": 2.0, "t_p": 1}], '
                '"bus": {"x": 0, "y": 0}, "word_transfer_time": 0}')
        scenario = read_bus_scenario(self.write(tmp_path, text))
        assert scenario.cores[0].position.z == 2.0


class TestDistributedScenarioJson:
    GOOD = """\
    {
      "orchestrator": {"x": 0, "y": 0, "t_init": 1.0},
      "fellows": [
        {"x": -0.5, "y": 0, "work": 2.0},
        {"id": "remote", "x": 1.0, "y": 0, "work": 2.0}
      ],
      "dispatch_time": 0.2,
      "collect_time": 0.3,
      "closing_time": 0.5
    }
    """

    def write(self, tmp_path, text, name="dist.json"):
        path = tmp_path / name
        path.write_text(text)
        return path

    def test_good_scenario(self, tmp_path):
        scenario = read_distributed_scenario(self.write(tmp_path, self.GOOD))
        assert scenario.orchestrator.id == "orchestrator"
        assert [f.id for f in scenario.fellows] == ["fellow0", "remote"]
        assert scenario.dispatch_time == 0.2
        result = simulate_distributed(scenario)
        assert result.critical_fellow == "remote"

    def test_all_overheads_required(self, tmp_path):
        for missing in ("dispatch_time", "collect_time", "closing_time"):
            data = json.loads(self.GOOD)
            del data[missing]
            with pytest.raises(FileFormatError) as excinfo:
                read_distributed_scenario(
                    self.write(tmp_path, json.dumps(data), name=f"no_{missing}.json"))
            assert missing in str(excinfo.value)

    def test_missing_sections(self, tmp_path):
        with pytest.raises(FileFormatError):
            read_distributed_scenario(self.write(tmp_path, '{"fellows": []}'))


class TestCsvEmission:
    def test_timeline_csv_exact(self):
        netlist = parse_netlist(
            "INPUT src 0 0\nGATE B1 BUF 1 0 0.5 out src\n"
            "OUTPUT y out\nSET src 0 1\n"
        )
        assert format_timeline_csv(simulate(netlist)) == (
            "time,gate,net,value,provisional\n"
            "1.5,B1,out,1,0\n"
        )

    def test_timeline_csv_marks_provisional(self):
        netlist = build_one_bit_adder(stimuli={"a": 1, "b": 1, "cin": 0})
        text = format_timeline_csv(simulate(netlist))
        assert "2.0,OR1,cout,1,1\n" in text
        assert "3.0,OR1,cout,1,0\n" in text

    def test_bus_csv_exact(self):
        scenario = BusScenario(
            cores=(ComputingElement("c", TimePoint(0.5, 0), 1.0),),
            bus_position=TimePoint(0, 0),
            word_transfer_time=0.25,
        )
        assert format_bus_csv(simulate_bus(scenario)) == (
            "core,request_sent,request_arrived,grant_issued,"
            "grant_arrived,data_at_bus,message_done\n"
            "c,1.0,1.5,1.5,2.0,2.5,2.75\n"
        )

    def test_sweep_csv_exact(self):
        assert format_sweep_csv([(1, 2.75), (2, 4.0)]) == (
            "cores,total_completion\n1,2.75\n2,4.0\n"
        )

    def test_distributed_csv_header_and_ids(self):
        run = simulate_distributed(DistributedScenario(
            orchestrator=ComputingElement("orch", TimePoint(0, 0), 1.0),
            fellows=(ComputingElement("f0", TimePoint(0, 0), 3.0),),
            closing_time=1.0,
        ))
        text = format_distributed_csv(run)
        lines = text.splitlines()
        assert lines[0] == ("fellow,command_sent,started,finished,"
                            "result_arrived,reception_start,reception_end")
        assert lines[1].startswith("f0,1.0,1.0,4.0,4.0,")

    def test_history_csv_header(self):
        text = format_history_csv([(1972, 0.1, 0.2, 0.003)])
        assert text.splitlines()[0] == "year,proc_transfer_rel,cache_transfer_rel,dispersion"
        assert text.splitlines()[1] == "1972,0.1,0.2,0.003"

    def test_surface_csv_row_major_and_roundtrip(self):
        alphas = [0.1 + 0.2, 0.9]
        ns = [1.0, 2.0]
        surface = [[1.0, 0.625], [1.0, 1.0 / 1.1]]
        text = format_surface_csv(alphas, ns, surface)
        lines = text.splitlines()
        assert lines[0] == "alpha,n,efficiency"
        assert len(lines) == 5
        parsed = [line.split(",") for line in lines[1:]]
        assert [row[0] for row in parsed] == [repr(0.1 + 0.2)] * 2 + ["0.9"] * 2
        for (i, j), row in zip(((0, 0), (0, 1), (1, 0), (1, 1)), parsed):
            assert float(row[1]) == ns[j]
            assert float(row[2]) == surface[i][j]

    def test_float_text_roundtrips_bitwise(self):
        rng = random.Random(61)
        values = [rng.uniform(-1e6, 1e6) for _ in range(200)]
        text = format_sweep_csv([(i, v) for i, v in enumerate(values)])
        parsed = [float(line.split(",")[1]) for line in text.splitlines()[1:]]
        assert parsed == values
