#include "mvrp/service.hpp"

#include <condition_variable>
#include <deque>
#include <fstream>
#include <iterator>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "mvrp/wire.hpp"

namespace mvrp {

using nlohmann::json;

struct Service::Impl {
  ServiceConfig config;

  mutable std::mutex mu;
  std::condition_variable command_cv;
  mutable std::condition_variable publish_cv;

  std::shared_ptr<const Instance> instance;
  std::deque<EngineCommand> queue;
  bool running = false;  // engine thread alive
  bool quit = false;     // engine thread must exit
  bool closing = false;  // service shutting down
  std::thread worker;

  std::uint64_t seq = 0;
  std::optional<PublishedSnapshot> snapshot;
  std::vector<TrajectoryPoint> trajectory;

  httplib::Server http;
  bool bound = false;

  explicit Impl(ServiceConfig c) : config(c) {}

  void stop_engine() {
    {
      std::lock_guard lk(mu);
      quit = true;
    }
    command_cv.notify_all();
    if (worker.joinable()) worker.join();
    std::lock_guard lk(mu);
    running = false;
    quit = false;
    queue.clear();
  }

  // Engine thread only; the caller must not hold `mu`.
  void publish(const Engine& engine, std::size_t& published_points) {
    const auto& traj = engine.trajectory();
    std::span<const TrajectoryPoint> fresh(traj.begin() + static_cast<std::ptrdiff_t>(published_points), traj.end());
    const Snapshot snap = engine.snapshot();
    std::lock_guard lk(mu);
    ++seq;
    snapshot = PublishedSnapshot{seq, snapshot_json(snap, engine.instance(), seq, fresh).dump()};
    trajectory.insert(trajectory.end(), fresh.begin(), fresh.end());
    published_points = traj.size();
    publish_cv.notify_all();
  }

  void engine_loop(std::unique_ptr<Engine> engine) {
    std::size_t published_points = 0;
    publish(*engine, published_points);
    std::unique_lock lk(mu);
    while (!quit) {
      command_cv.wait(lk, [&] { return quit || !queue.empty() || !engine->paused(); });
      if (quit) break;
      std::deque<EngineCommand> commands;
      commands.swap(queue);
      lk.unlock();

      bool changed = !commands.empty();
      for (const auto& c : commands) engine->apply(c);
      if (engine->stopped()) {
        publish(*engine, published_points);
        lk.lock();
        break;
      }
      if (!engine->paused()) {
        const SweepReport rep = engine->sweep();
        changed = changed || rep.objectives_changed || rep.improved || rep.converged;
      }
      if (changed) publish(*engine, published_points);
      lk.lock();
    }
    running = false;
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(config)) {
  auto& http = impl_->http;
  // Without SO_REUSEPORT a second server on an occupied port fails to bind.
  http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Headers", "Content-Type"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  auto reply = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  auto error = [reply](httplib::Response& res, int status, const std::string& message) {
    reply(res, status, json{{"ok", false}, {"error", message}});
  };

  http.Post("/api/load-instance", [this, reply, error](const httplib::Request& req, httplib::Response& res) {
    const auto body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) return error(res, 400, "request body must be a JSON object");
    std::string text;
    if (auto it = body.find("cordeau"); it != body.end() && it->is_string()) {
      text = it->get<std::string>();
    } else if (auto p = body.find("path"); p != body.end() && p->is_string()) {
      std::ifstream in(p->get<std::string>(), std::ios::binary);
      if (!in) return error(res, 404, "cannot open instance file '" + p->get<std::string>() + "'");
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
      return error(res, 400, "expected 'path' or 'cordeau'");
    }
    const auto issues = load_instance_text(text);
    if (!issues.empty()) {
      json list = json::array();
      for (const auto& i : issues) list.push_back({{"line", i.line}, {"kind", to_string(i.kind)}, {"message", i.message}});
      return reply(res, 400, json{{"ok", false}, {"error", "instance has parse issues"}, {"issues", list}});
    }
    std::lock_guard lk(impl_->mu);
    reply(res, 200, json{{"ok", true}, {"customers", impl_->instance->customer_count()},
                         {"depots", impl_->instance->depots().size()}, {"vehicles", impl_->instance->vehicles().size()}});
  });

  http.Post("/api/start", [this, reply, error](const httplib::Request&, httplib::Response& res) {
    try {
      start();
    } catch (const StalledError& e) {
      return error(res, 422, e.what());
    } catch (const ModelError& e) {
      return error(res, 409, e.what());
    }
    auto snap = latest();
    reply(res, 200, json{{"ok", true}, {"seq", snap ? snap->seq : 0}});
  });

  auto command_route = [this, reply, error](const char* path, EngineCommand command) {
    impl_->http.Post(path, [this, reply, error, command](const httplib::Request&, httplib::Response& res) {
      try {
        submit(command);
      } catch (const ModelError& e) {
        return error(res, 409, e.what());
      }
      reply(res, 202, json{{"ok", true}});
    });
  };
  command_route("/api/pause", EngineCommand::pause());
  command_route("/api/resume", EngineCommand::resume());
  command_route("/api/force-reallocate", EngineCommand::force_reallocate());
  command_route("/api/stop", EngineCommand::stop());

  http.Post("/api/set-weight", [this, reply, error](const httplib::Request& req, httplib::Response& res) {
    const auto parsed = parse_set_weight(req.body);
    if (const auto* msg = std::get_if<std::string>(&parsed)) return error(res, 400, *msg);
    try {
      submit(EngineCommand::set_weight(std::get<double>(parsed)));
    } catch (const ModelError& e) {
      return error(res, 409, e.what());
    }
    reply(res, 202, json{{"ok", true}, {"w_dist", std::get<double>(parsed)}});
  });

  http.Get("/api/snapshot", [this, error](const httplib::Request&, httplib::Response& res) {
    auto snap = latest();
    if (!snap) return error(res, 409, "no run started");
    res.set_content(snap->json, "application/json");
  });

  http.Get("/api/trajectory", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(trajectory_jsonl(), "application/x-ndjson");
  });

  http.Get("/api/subscribe", [this](const httplib::Request&, httplib::Response& res) {
    res.set_header("Cache-Control", "no-cache");
    auto last = std::make_shared<std::uint64_t>(0);
    res.set_chunked_content_provider("text/event-stream", [this, last](std::size_t, httplib::DataSink& sink) {
      {
        std::lock_guard lk(impl_->mu);
        if (impl_->closing) return false;
      }
      auto snap = wait_for(*last, std::chrono::milliseconds(250));
      std::string chunk;
      if (snap) {
        *last = snap->seq;
        chunk = "event: snapshot\ndata: " + snap->json + "\n\n";
      } else {
        chunk = ": keepalive\n\n";
      }
      return sink.write(chunk.data(), chunk.size());
    });
  });
}

Service::~Service() { shutdown(); }

void Service::load_instance(std::shared_ptr<const Instance> instance) {
  impl_->stop_engine();
  std::lock_guard lk(impl_->mu);
  impl_->instance = std::move(instance);
  impl_->snapshot.reset();
  impl_->trajectory.clear();
}

std::vector<ParseIssue> Service::load_instance_text(std::string_view text) {
  ParseResult parsed = parse_cordeau(text);
  if (!parsed) return parsed.issues;
  load_instance(std::make_shared<const Instance>(std::move(*parsed.instance)));
  return {};
}

void Service::start() {
  std::shared_ptr<const Instance> instance;
  {
    std::lock_guard lk(impl_->mu);
    instance = impl_->instance;
  }
  if (!instance) throw ModelError("no instance loaded");
  impl_->stop_engine();
  auto engine = std::make_unique<Engine>(instance, impl_->config.initial_w, impl_->config.seed, impl_->config.engine);
  engine->apply(EngineCommand::pause());
  std::lock_guard lk(impl_->mu);
  impl_->trajectory.clear();
  impl_->running = true;
  impl_->worker = std::thread([impl = impl_.get(), e = std::move(engine)]() mutable { impl->engine_loop(std::move(e)); });
}

bool Service::started() const {
  std::lock_guard lk(impl_->mu);
  return impl_->running;
}

void Service::submit(const EngineCommand& command) {
  {
    std::lock_guard lk(impl_->mu);
    if (!impl_->running) throw ModelError("no run in progress");
    impl_->queue.push_back(command);
  }
  impl_->command_cv.notify_all();
}

std::optional<PublishedSnapshot> Service::latest() const {
  std::lock_guard lk(impl_->mu);
  return impl_->snapshot;
}

std::optional<PublishedSnapshot> Service::wait_for(std::uint64_t after_seq, std::chrono::milliseconds timeout) const {
  std::unique_lock lk(impl_->mu);
  const bool ready = impl_->publish_cv.wait_for(lk, timeout, [&] {
    return impl_->closing || (impl_->snapshot && impl_->snapshot->seq > after_seq);
  });
  if (!ready || !impl_->snapshot || impl_->snapshot->seq <= after_seq) return std::nullopt;
  return impl_->snapshot;
}

std::string Service::trajectory_jsonl() const {
  std::lock_guard lk(impl_->mu);
  std::string out;
  for (const auto& p : impl_->trajectory) out += trajectory_record(p) + '\n';
  return out;
}

int Service::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->http.bind_to_any_port(host);
  } else if (!impl_->http.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port) + " (address in use?)");
  impl_->bound = true;
  return bound;
}

void Service::serve() {
  if (!impl_->bound) throw std::runtime_error("serve() requires a successful bind()");
  impl_->http.listen_after_bind();
}

void Service::shutdown() {
  {
    std::lock_guard lk(impl_->mu);
    impl_->closing = true;
  }
  impl_->publish_cv.notify_all();
  impl_->http.stop();
  impl_->stop_engine();
}

}  // namespace mvrp
