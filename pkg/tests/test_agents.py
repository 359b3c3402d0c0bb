import pytest

from agents.base_agent import AgentState, BaseAgent, ICurveAgent
from agents.coordinator import CoordinatorAgent
from agents.curve_generator import CurveGeneratorAgent
from agents.curve_io import CurveIOAgent
from benchmark import clear_profile_data, get_profile_summary
from communication.message import Message, MessageType
from communication.message_bus import MessageBus
from models.errors import CurveGeometryError, InvalidSpec
from models.family import LAC, EsaClass, FamilySpec, Sign
from models.run_config import Command, RunConfig


class TestLifecycle:
    def test_agent_registers_and_becomes_idle(self, quiet_bus):
        agent = CurveIOAgent(quiet_bus)
        assert isinstance(agent, ICurveAgent)
        assert "CurveIO" in quiet_bus.subscribers
        assert agent.get_agent_state() == AgentState.IDLE
        assert agent.health_check()

    def test_successful_run_completes(self, quiet_bus):
        agent = CurveGeneratorAgent(quiet_bus)
        curve = agent.safe_execute(spec=FamilySpec(EsaClass(Sign.PLUS, 1.0), (0.5, 4.0), 50))
        assert len(curve) == 50
        assert agent.get_agent_state() == AgentState.COMPLETED
        assert agent.get_metrics()["execution_time"] is not None

    def test_shutdown_unregisters(self, quiet_bus):
        agent = CurveIOAgent(quiet_bus)
        agent.shutdown()
        assert "CurveIO" not in quiet_bus.subscribers
        assert agent.get_agent_state() == AgentState.SHUTDOWN
        assert not agent.health_check()

    def test_startup_resets_the_error_count(self, quiet_bus):
        agent = CurveIOAgent(quiet_bus)
        agent.safe_execute(action="fax")
        agent.startup()
        assert agent.get_metrics()["error_count"] == 0


class TestSafeExecute:
    def test_unexpected_errors_are_absorbed_until_the_budget_is_spent(self, quiet_bus):
        agent = CurveIOAgent(quiet_bus)
        assert agent.safe_execute(action="fax") is None
        assert agent.safe_execute(action="fax") is None
        with pytest.raises(ValueError):
            agent.safe_execute(action="fax")
        assert not agent.health_check()

    def test_domain_errors_propagate_immediately(self, quiet_bus):
        agent = CurveGeneratorAgent(quiet_bus)
        with pytest.raises(InvalidSpec) as info:
            agent.safe_execute(spec=FamilySpec(EsaClass(Sign.PLUS, 1.0), (0.5, 4.0), 50), msa=True)
        assert isinstance(info.value, CurveGeometryError)
        assert agent.get_metrics()["error_count"] == 1


class TestMessageBus:
    def test_history_is_filterable(self, quiet_bus):
        agent = CurveGeneratorAgent(quiet_bus)
        agent.safe_execute(spec=FamilySpec(LAC(1.0, 1.0, 1.0), (0.0, 1.0), 20))
        curves = quiet_bus.get_history(sender="CurveGenerator", msg_type=MessageType.CURVE)
        assert len(curves) == 1
        assert curves[0].receiver == "Coordinator"
        assert curves[0].content["samples"] == 20

    def test_unknown_receiver_is_dropped(self, quiet_bus, caplog):
        quiet_bus.send(Message(MessageType.DATA, "CurveIO", "Nobody", {}))
        assert "Nobody" in caplog.text
        assert len(quiet_bus.message_history) == 1

    def test_broadcast_reaches_everyone_but_the_sender(self, quiet_bus):
        received = []
        quiet_bus.register("a", received.append)
        quiet_bus.register("b", received.append)
        quiet_bus.send(Message(MessageType.BROADCAST, "a", None, "hello"))
        assert len(received) == 1
        assert quiet_bus.traffic() == {"a": {"sent": 1, "received": 0}, "b": {"sent": 0, "received": 1}}

    def test_conversation_by_correlation_id(self, quiet_bus):
        request = Message(MessageType.REQUEST, "a", "b", {"type": "ping"})
        quiet_bus.send(request)
        quiet_bus.send(Message.create_response(request, "pong"))
        assert [m.msg_type for m in quiet_bus.get_conversation(request.correlation_id)] == [
            MessageType.REQUEST, MessageType.RESPONSE]


class TestCoordinator:
    def run_generate(self, bus: MessageBus, tmp_path, family=None):
        run_config = RunConfig(
            command=Command.GENERATE,
            output_path=tmp_path / "curve.csv",
            family=family or FamilySpec(EsaClass(Sign.PLUS, 1.0), (0.5, 4.0), 200),
        )
        return CoordinatorAgent(bus, log_dir=str(tmp_path / "session")).execute(run_config)

    def test_generate_end_to_end(self, quiet_bus, tmp_path):
        results = self.run_generate(quiet_bus, tmp_path)
        assert results["command"] == "Generate"
        assert results["outputs"] == [str(tmp_path / "curve.csv")]
        assert results["summary"]["samples"] == 200
        assert (tmp_path / "curve.csv").read_text().startswith("# kind=Equiaffine family=esa")

    def test_session_log_records_the_run(self, quiet_bus, tmp_path):
        results = self.run_generate(quiet_bus, tmp_path)
        text = open(results["log_file"], encoding="utf-8").read()
        assert "GENERATE" in text
        assert "SESSION ENDED" in text
        assert BaseAgent._file_logger is None

    def test_agents_are_shut_down_afterwards(self, quiet_bus, tmp_path):
        self.run_generate(quiet_bus, tmp_path)
        assert set(quiet_bus.subscribers) == {"Coordinator"}
        completes = quiet_bus.get_history(sender="Coordinator", msg_type=MessageType.COMPLETE)
        assert completes[-1].content == {"status": "complete", "command": "Generate"}

    def test_execution_is_profiled(self, quiet_bus, tmp_path):
        clear_profile_data()
        self.run_generate(quiet_bus, tmp_path)
        assert get_profile_summary()["CoordinatorAgent.execute"]["call_count"] == 1

    def test_domain_error_leaves_no_artifact(self, quiet_bus, tmp_path):
        singular = FamilySpec(EsaClass(Sign.PLUS, 1.0), (-1.0, 1.0), 200)
        with pytest.raises(CurveGeometryError) as info:
            self.run_generate(quiet_bus, tmp_path, singular)
        assert info.value.to_dict()["error"] == "SingularRange"
        assert not (tmp_path / "curve.csv").exists()
