// Copyright 2026 The Linerguide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "linerguide/server.hpp"

#include <atomic>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/thread_pool.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <csignal>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <vector>

#include "linerguide/error.hpp"

namespace linerguide {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;
using Request = http::request<http::string_body>;
using Response = http::response<http::string_body>;

class WsConnection;

struct Shared {
  Shared(EngineConfig cfg, unsigned threads, std::optional<std::filesystem::path> dir)
      : manager(std::move(cfg)), pool(threads == 0 ? 1 : threads), static_dir(std::move(dir)) {}

  SessionManager manager;
  net::thread_pool pool;
  std::optional<std::filesystem::path> static_dir;
  std::mutex conn_mu;
  std::vector<std::weak_ptr<WsConnection>> conns;
  std::atomic<bool> stopping{false};
};

std::string to_std(beast::string_view s) { return std::string(s.data(), s.size()); }

struct Target {
  std::string path;
  std::string session;
};

Target parse_target(beast::string_view raw) {
  Target t;
  const std::string s = to_std(raw);
  const auto q = s.find('?');
  t.path = s.substr(0, q);
  if (q == std::string::npos) return t;
  std::istringstream query(s.substr(q + 1));
  std::string pair;
  while (std::getline(query, pair, '&')) {
    if (pair.rfind("session=", 0) == 0) t.session = pair.substr(8);
  }
  return t;
}

Response make_response(const Request& req, http::status status, std::string body,
                       beast::string_view content_type = "application/json") {
  Response res{status, req.version()};
  res.set(http::field::server, "linerguide");
  res.set(http::field::content_type, content_type);
  res.set(http::field::access_control_allow_origin, "*");
  res.keep_alive(req.keep_alive());
  res.body() = std::move(body);
  res.prepare_payload();
  return res;
}

Response json_response(const Request& req, http::status status, const json& body) {
  return make_response(req, status, body.dump());
}

http::status status_for(ErrorCode code) {
  return code == ErrorCode::kUnknownSession ? http::status::not_found
                                            : http::status::bad_request;
}

beast::string_view mime_type(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

Response serve_static(const Shared& sh, const Request& req, const std::string& path) {
  const json not_found = {{"error", "not found"}};
  if (!sh.static_dir || path.find("..") != std::string::npos) {
    return json_response(req, http::status::not_found, not_found);
  }
  std::filesystem::path file = *sh.static_dir / (path == "/" ? "index.html" : path.substr(1));
  std::ifstream in(file, std::ios::binary);
  if (!in) return json_response(req, http::status::not_found, not_found);
  std::stringstream buf;
  buf << in.rdbuf();
  return make_response(req, http::status::ok, buf.str(), mime_type(file));
}

Response route(Shared& sh, const Request& req) {
  const Target t = parse_target(req.target());
  const auto method = req.method();
  try {
    if (method == http::verb::options) {
      Response res = make_response(req, http::status::no_content, "");
      res.set(http::field::access_control_allow_methods, "GET, POST, DELETE, OPTIONS");
      res.set(http::field::access_control_allow_headers, "Content-Type");
      return res;
    }
    if (t.path == "/health" && method == http::verb::get) {
      return json_response(req, http::status::ok,
                           {{"status", "ok"}, {"sessions", sh.manager.size()}});
    }
    if (t.path == "/config/schema" && method == http::verb::get) {
      return json_response(req, http::status::ok, config_schema());
    }
    if (t.path == "/session" && method == http::verb::post) {
      json overrides;
      if (!req.body().empty()) {
        try {
          overrides = json::parse(req.body());
        } catch (const json::parse_error& e) {
          throw Error(ErrorCode::kBadConfig,
                      "JSON parse error at byte " + std::to_string(e.byte));
        }
      }
      const auto s = sh.manager.open_session(overrides);
      const auto [w, h] = s->image_size();
      return json_response(req, http::status::ok,
                           {{"id", s->id()},
                            {"config", engine_config_to_json(s->config())},
                            {"image", {{"w", w}, {"h", h}}}});
    }
    if (t.path.rfind("/session/", 0) == 0) {
      const std::string rest = t.path.substr(9);
      const auto slash = rest.find('/');
      const std::string id = rest.substr(0, slash);
      const std::string tail = slash == std::string::npos ? "" : rest.substr(slash);
      if (tail == "/stats" && method == http::verb::get) {
        return json_response(req, http::status::ok, sh.manager.find(id)->stats_json());
      }
      if (tail.empty() && method == http::verb::delete_) {
        if (!sh.manager.close(id)) sh.manager.find(id);  // throws UnknownSession
        return json_response(req, http::status::ok, {{"closed", id}});
      }
    }
    if (method == http::verb::get) return serve_static(sh, req, t.path);
    return json_response(req, http::status::not_found, {{"error", "not found"}});
  } catch (const Error& e) {
    return json_response(req, status_for(e.code()), error_message(e.code(), e.what()));
  }
}

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, Shared& sh, std::shared_ptr<Session> session, bool announce)
      : ws_(std::move(socket)), sh_(sh), session_(std::move(session)), announce_(announce) {}

  void accept(Request req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.read_message_max(8u << 20);
    ws_.async_accept(req, beast::bind_front_handler(&WsConnection::on_accept, shared_from_this()));
  }

  // Runs on the I/O thread.
  void close() {
    closing_ = true;
    if (outbox_.empty()) do_close();
  }

 private:
  struct Work {
    json msg;
    bool frame = false;
  };

  void on_accept(beast::error_code ec) {
    if (ec) return;
    {
      std::lock_guard lock(sh_.conn_mu);
      sh_.conns.push_back(weak_from_this());
    }
    if (announce_) send(json{{"type", "session"}, {"id", session_->id()}}.dump());
    do_read();
  }

  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return;
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    json msg;
    try {
      msg = json::parse(text);
      enqueue(std::move(msg));
    } catch (const json::parse_error& e) {
      send(error_message(ErrorCode::kSchemaError,
                         "JSON parse error at byte " + std::to_string(e.byte))
               .dump());
    }
    if (!closing_) do_read();
  }

  // Only the newest unstarted frame is kept; control messages keep order.
  void enqueue(json msg) {
    const bool frame = msg.is_object() && msg.contains("type") && msg["type"] == "frame";
    std::lock_guard lock(work_mu_);
    if (frame && !work_.empty() && work_.back().frame) {
      work_.back().msg = std::move(msg);
      session_->record_dropped();
    } else {
      work_.push_back({std::move(msg), frame});
    }
    if (!busy_) {
      busy_ = true;
      net::post(sh_.pool, [self = shared_from_this()] { self->drain(); });
    }
  }

  void drain() {
    for (;;) {
      Work w;
      {
        std::lock_guard lock(work_mu_);
        if (work_.empty()) {
          busy_ = false;
          return;
        }
        w = std::move(work_.front());
        work_.pop_front();
      }
      std::string reply = session_->handle_message(w.msg).dump();
      net::post(ws_.get_executor(), [self = shared_from_this(), reply = std::move(reply)]() mutable {
        self->send(std::move(reply));
      });
    }
  }

  void send(std::string text) {
    if (closing_ && outbox_.empty()) return;
    outbox_.push_back(std::move(text));
    if (outbox_.size() == 1) do_write();
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(outbox_.front()),
                    beast::bind_front_handler(&WsConnection::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) return;
    outbox_.pop_front();
    if (!outbox_.empty()) {
      do_write();
    } else if (closing_) {
      do_close();
    }
  }

  void do_close() {
    if (close_started_ || !ws_.is_open()) return;
    close_started_ = true;
    ws_.async_close(websocket::close_code::going_away,
                    [self = shared_from_this()](beast::error_code) {});
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  Shared& sh_;
  std::shared_ptr<Session> session_;
  bool announce_;
  std::deque<std::string> outbox_;
  bool closing_ = false;
  bool close_started_ = false;

  std::mutex work_mu_;
  std::deque<Work> work_;
  bool busy_ = false;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, Shared& sh) : stream_(std::move(socket)), sh_(sh) {}

  void start() { do_read(); }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      upgrade();
      return;
    }
    write(route(sh_, req_));
  }

  void upgrade() {
    const Target t = parse_target(req_.target());
    if (t.path != "/stream" || sh_.stopping) {
      write(json_response(req_, http::status::not_found, {{"error", "not found"}}));
      return;
    }
    std::shared_ptr<Session> session;
    try {
      session = t.session.empty() ? sh_.manager.open_session() : sh_.manager.find(t.session);
    } catch (const Error& e) {
      write(json_response(req_, status_for(e.code()), error_message(e.code(), e.what())));
      return;
    }
    stream_.expires_never();
    auto ws = std::make_shared<WsConnection>(stream_.release_socket(), sh_, std::move(session),
                                             t.session.empty());
    ws->accept(std::move(req_));
  }

  void write(Response res) {
    auto msg = std::make_shared<Response>(std::move(res));
    http::async_write(stream_, *msg,
                      [self = shared_from_this(), msg](beast::error_code ec, std::size_t) {
                        if (ec) return;
                        if (msg->need_eof()) {
                          self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                          return;
                        }
                        self->do_read();
                      });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  Shared& sh_;
  Request req_;
};

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions o)
      : opts(std::move(o)),
        shared(opts.config, opts.worker_threads, opts.static_dir),
        acceptor(ioc),
        signals(ioc),
        stop_timer(ioc) {}

  void bind() {
    beast::error_code ec;
    const auto addr = net::ip::make_address(opts.address, ec);
    if (ec) throw BindError("invalid address " + opts.address + ": " + ec.message());
    const tcp::endpoint ep{addr, opts.port};
    const std::string where = opts.address + ":" + std::to_string(opts.port);
    acceptor.open(ep.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(ep, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec) throw BindError("cannot listen on " + where + ": " + ec.message());
  }

  void do_accept() {
    acceptor.async_accept(ioc, [this](beast::error_code ec, tcp::socket socket) {
      if (!acceptor.is_open()) return;
      if (!ec) std::make_shared<HttpConnection>(std::move(socket), shared)->start();
      do_accept();
    });
  }

  void shutdown() {
    if (shared.stopping.exchange(true)) return;
    beast::error_code ec;
    acceptor.close(ec);
    signals.cancel(ec);
    std::vector<std::shared_ptr<WsConnection>> live;
    {
      std::lock_guard lock(shared.conn_mu);
      for (auto& w : shared.conns) {
        if (auto c = w.lock()) live.push_back(std::move(c));
      }
      shared.conns.clear();
    }
    for (auto& c : live) c->close();
    stop_timer.expires_after(std::chrono::milliseconds(200));
    stop_timer.async_wait([this](beast::error_code) { ioc.stop(); });
  }

  // Declared first so sockets and timers are destroyed before it.
  net::io_context ioc{1};
  ServerOptions opts;
  Shared shared;
  tcp::acceptor acceptor;
  net::signal_set signals;
  net::steady_timer stop_timer;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {
  impl_->bind();
}

Server::~Server() = default;

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

SessionManager& Server::sessions() { return impl_->shared.manager; }

void Server::run(bool handle_signals) {
  if (handle_signals) {
    impl_->signals.add(SIGINT);
    impl_->signals.add(SIGTERM);
    impl_->signals.async_wait([this](beast::error_code ec, int) {
      if (!ec) impl_->shutdown();
    });
  }
  impl_->do_accept();
  impl_->ioc.run();
  impl_->shared.pool.join();
}

void Server::stop() {
  net::post(impl_->ioc, [this] { impl_->shutdown(); });
}

}  // namespace linerguide
