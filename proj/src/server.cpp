#include "riso/server.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <chrono>
#include <deque>
#include <iostream>
#include <mutex>

namespace riso {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

json envelope(const std::string &type, json payload) {
  return {{"v", kProtocolVersion}, {"type", type}, {"payload", std::move(payload)}};
}

json round_numbers(json j) {
  if (j.is_number_float()) return round_significant(j.get<double>(), 9);
  if (j.is_array() || j.is_object())
    for (auto &el : j) el = round_numbers(std::move(el));
  return j;
}

json state_frame(const Session &session, const TickRecord *last) {
  const SystemState &s = session.state();
  json objects = json::array();
  for (const auto &b : s.bodies)
    objects.push_back({{"id", b.object_id},
                       {"pose", to_json(b.pose)},
                       {"count", b.count},
                       {"attached", b.attached() ? json(*b.attached_to) : json(nullptr)}});
  json events = json::array();
  if (last)
    for (const auto &e : last->events) events.push_back(to_json(e));
  const Vec3 zero;
  json p = {{"tick", s.tick},
            {"time", s.time},
            {"ee", to_json(s.ee)},
            {"f", s.f},
            {"P", s.P},
            {"objects", objects},
            {"belief", session.belief().flat()},
            {"aH", to_json(last ? last->input.a_H : zero)},
            {"aR", to_json(last ? last->a_R : zero)},
            {"a", to_json(last ? last->a : zero)},
            {"events", events},
            {"mode", to_string(session.config().mode)},
            {"delivered", session.delivered()}};
  return envelope("state", round_numbers(std::move(p)));
}

json error_frame(const std::string &code, const std::string &msg) {
  return envelope("error", {{"code", code}, {"msg", msg}});
}

namespace {

struct BadFrame {
  std::string code;
  std::string msg;
};

OperatorInput parse_input(const json &p) {
  if (!p.is_object()) throw BadFrame{"bad_payload", "input payload must be an object"};
  OperatorInput in;
  try {
    if (p.contains("aH")) {
      const auto &a = p.at("aH");
      if (!a.is_array() || a.size() != 3) throw BadFrame{"bad_payload", "aH must be [x, y, z]"};
      in.a_H = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
    }
    if (p.contains("df")) in.df = p.at("df").get<double>();
    if (p.contains("dP")) in.dP = p.at("dP").get<double>();
  } catch (const json::exception &e) {
    throw BadFrame{"bad_payload", e.what()};
  }
  if (!is_finite(in.a_H) || !std::isfinite(in.df) || !std::isfinite(in.dP))
    throw BadFrame{"bad_payload", "non-finite input"};
  return in;
}

}  // namespace

struct TeleopServer::Impl {
  using Socket = websocket::stream<beast::tcp_stream>;

  Impl(Scenario sc, ServerOptions opt)
      : options(std::move(opt)), session(std::move(sc), options.session), acceptor(ioc), timer(ioc) {
    const tcp::endpoint ep(asio::ip::make_address(options.address), options.port);
    acceptor.open(ep.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(ep);
    acceptor.listen();
    begin_episode();
  }

  ServerOptions options;
  Session session;
  asio::io_context ioc;
  tcp::acceptor acceptor;
  asio::steady_timer timer;

  /// Per-connection state; async handlers hold a reference so buffers
  /// outlive any operation in flight.
  struct Connection {
    explicit Connection(tcp::socket s) : ws(std::move(s)) {}
    Socket ws;
    beast::flat_buffer read_buf;
    std::deque<std::string> outbox;
    bool writing = false;
    bool closing = false;
    websocket::close_code close_code = websocket::close_code::normal;
  };

  std::shared_ptr<Connection> client;

  OperatorInput latched;
  mutable std::mutex mu;  // guards episode and metrics
  EpisodeLog episode;
  std::optional<MetricsReport> metrics;

  bool finished() const { return episode.status != EpisodeStatus::running; }

  void begin_episode() {
    std::lock_guard lock(mu);
    session.reset();
    latched = {};
    episode = {};
    episode.header = session.header();
    episode.scenario = session.scenario();
  }

  // -- episode ------------------------------------------------------------

  void do_tick(const OperatorInput &in) {
    TickRecord rec;
    {
      std::lock_guard lock(mu);
      rec = session.tick(in);
      episode.ticks.push_back(rec);
    }
    send(state_frame(session, &rec));
    if (session.all_delivered()) finish(EpisodeStatus::complete);
    else if (session.budget_exhausted()) finish(EpisodeStatus::budget_exhausted);
  }

  void finish(EpisodeStatus status) {
    MetricsReport m;
    {
      std::lock_guard lock(mu);
      episode.status = status;
      const std::size_t before = episode.ticks.size();
      settle(session, episode);
      if (episode.ticks.empty()) return;
      m = compute_metrics(episode, session.scenario());
      metrics = m;
      if (episode.ticks.size() != before) {
        const TickRecord last = episode.ticks.back();
        send(state_frame(session, &last));
      }
    }
    send(envelope("metrics", round_numbers(to_json(m))));
    if (!options.log_path.empty()) {
      std::lock_guard lock(mu);
      save_log(episode, options.log_path);
    }
  }

  // -- wall clock ---------------------------------------------------------

  void arm_timer(std::chrono::steady_clock::time_point next) {
    timer.expires_at(next);
    timer.async_wait([this, next](beast::error_code ec) {
      if (ec) return;
      const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(session.scenario().physics.dt));
      if (client && !finished()) {
        try {
          do_tick(latched);
        } catch (const std::exception &e) {
          send(error_frame("tick_failed", e.what()));
        }
      }
      auto upcoming = next + period;
      const auto now = std::chrono::steady_clock::now();
      if (upcoming < now) upcoming = now + period;  // paused or overloaded: don't burst
      arm_timer(upcoming);
    });
  }

  // -- connections --------------------------------------------------------

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket sock) {
      if (ec) return;
      auto conn = std::make_shared<Connection>(std::move(sock));
      conn->ws.async_accept([this, conn](beast::error_code ec2) {
        if (ec2) return;
        conn->ws.text(true);
        if (client) {
          conn->closing = true;
          conn->close_code = websocket::close_code::try_again_later;
          conn->outbox.push_back(error_frame("busy", "an operator is already connected").dump());
          write_next(conn);
          return;
        }
        client = conn;
        send(state_frame(session, nullptr));
        read(conn);
      });
      accept();
    });
  }

  void drop_client(const std::shared_ptr<Connection> &conn) {
    if (client != conn) return;
    client.reset();
    latched = {};  // pause; a reconnecting operator starts from rest
  }

  void read(std::shared_ptr<Connection> conn) {
    conn->read_buf.clear();
    conn->ws.async_read(conn->read_buf, [this, conn](beast::error_code ec, std::size_t) {
      if (client != conn) return;
      if (ec) {
        drop_client(conn);
        return;
      }
      const std::string text = beast::buffers_to_string(conn->read_buf.data());
      if (!handle(text)) {
        // Flush the error frame, then close.
        conn->closing = true;
        conn->close_code = websocket::close_code::policy_error;
        drop_client(conn);
        if (!conn->writing) write_next(conn);
        return;
      }
      read(conn);
    });
  }

  /// Returns false when the connection must be closed.
  bool handle(const std::string &text) {
    json msg;
    try {
      msg = json::parse(text);
    } catch (const json::parse_error &e) {
      send(error_frame("bad_json", e.what()));
      return true;
    }
    if (!msg.is_object() || !msg.contains("v") || !msg.contains("type") || !msg["type"].is_string()) {
      send(error_frame("bad_envelope", "expected {v, type, payload}"));
      return true;
    }
    if (msg["v"] != kProtocolVersion) {
      send(error_frame("version_mismatch", "server speaks protocol version " + std::to_string(kProtocolVersion)));
      return false;
    }
    const std::string type = msg["type"];
    const json payload = msg.value("payload", json::object());
    try {
      if (type == "input") {
        const OperatorInput in = parse_input(payload);
        if (!options.lockstep) {
          latched = in;
        } else if (finished()) {
          send(error_frame("episode_over", "send reset to start a new episode"));
        } else {
          do_tick(in);
        }
      } else if (type == "reset") {
        begin_episode();
        send(state_frame(session, nullptr));
      } else if (type == "set_mode") {
        if (!payload.is_object() || !payload.contains("mode") || !payload["mode"].is_string())
          throw BadFrame{"bad_payload", "set_mode needs {mode}"};
        Mode m;
        try {
          m = mode_from_string(payload["mode"].get<std::string>());
        } catch (const std::exception &e) {
          throw BadFrame{"bad_payload", e.what()};
        }
        // A mode change starts a fresh episode so each log has one mode.
        session.set_mode(m);
        begin_episode();
        send(state_frame(session, nullptr));
      } else if (type == "done") {
        if (!finished()) finish(EpisodeStatus::operator_done);
      } else {
        send(error_frame("bad_type", "unknown message type '" + type + "'"));
      }
    } catch (const BadFrame &b) {
      send(error_frame(b.code, b.msg));
    } catch (const std::exception &e) {
      send(error_frame("tick_failed", e.what()));
    }
    return true;
  }

  // -- outgoing -----------------------------------------------------------

  void send(const json &frame) {
    if (!client) return;
    client->outbox.push_back(frame.dump());
    if (!client->writing) write_next(client);
  }

  void write_next(std::shared_ptr<Connection> conn) {
    if (conn->outbox.empty()) {
      conn->writing = false;
      if (conn->closing) conn->ws.async_close(websocket::close_reason(conn->close_code), [conn](beast::error_code) {});
      return;
    }
    conn->writing = true;
    conn->ws.async_write(asio::buffer(conn->outbox.front()), [this, conn](beast::error_code ec, std::size_t) {
      if (ec) {
        conn->writing = false;
        drop_client(conn);
        return;
      }
      conn->outbox.pop_front();
      write_next(conn);
    });
  }
};

TeleopServer::TeleopServer(Scenario scenario, ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(scenario), std::move(options))) {}

TeleopServer::~TeleopServer() = default;

unsigned short TeleopServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void TeleopServer::run() {
  impl_->accept();
  if (!impl_->options.lockstep) impl_->arm_timer(std::chrono::steady_clock::now());
  impl_->ioc.run();
}

void TeleopServer::stop() { impl_->ioc.stop(); }

EpisodeLog TeleopServer::log() const {
  std::lock_guard lock(impl_->mu);
  return impl_->episode;
}

std::optional<MetricsReport> TeleopServer::last_metrics() const {
  std::lock_guard lock(impl_->mu);
  return impl_->metrics;
}

}  // namespace riso
