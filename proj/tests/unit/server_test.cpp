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


#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "json.hpp"
#include "linerguide/config.hpp"
#include "linerguide/engine.hpp"
#include "linerguide/serialize.hpp"
#include "linerguide/server.hpp"
#include "support/synthetic.hpp"

namespace lg = linerguide;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

namespace {

struct Running {
  explicit Running(lg::ServerOptions opts) : server(std::move(opts)) {
    thread = std::thread([this] { server.run(); });
  }
  ~Running() {
    server.stop();
    thread.join();
  }
  lg::Server server;
  std::thread thread;
};

lg::ServerOptions local_options() {
  lg::ServerOptions o;
  o.port = 0;
  return o;
}

struct Reply {
  int status = 0;
  std::string body;
  json doc() const { return json::parse(body); }
};

Reply request(unsigned short port, http::verb verb, const std::string& target,
              const std::string& body = "") {
  net::io_context ioc;
  beast::tcp_stream stream(ioc);
  stream.connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
  http::request<http::string_body> req{verb, target, 11};
  req.set(http::field::host, "127.0.0.1");
  req.body() = body;
  req.prepare_payload();
  http::write(stream, req);
  beast::flat_buffer buf;
  http::response<http::string_body> res;
  http::read(stream, buf, res);
  beast::error_code ec;
  stream.socket().shutdown(tcp::socket::shutdown_both, ec);
  return {static_cast<int>(res.result_int()), res.body()};
}

struct WsClient {
  WsClient(unsigned short port, const std::string& target) : ws(ioc) {
    beast::get_lowest_layer(ws).connect(
        tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
    ws.handshake("127.0.0.1", target);
  }
  void send(const json& msg) { ws.write(net::buffer(msg.dump())); }
  json receive() {
    beast::flat_buffer buf;
    ws.read(buf);
    return json::parse(beast::buffers_to_string(buf.data()));
  }
  net::io_context ioc;
  websocket::stream<beast::tcp_stream> ws;
};

lg::FaceMeshFrame e30_frame(std::int64_t t = 0, double shift = 0.0) {
  const auto [l, r] =
      synth::place_pair(synth::e30(), synth::e30(), 32.0, {256.0 + shift, 240.0});
  return synth::make_frame(l, r, 512, 512, t);
}

json frame_message(const lg::FaceMeshFrame& f) {
  json lms = json::array();
  for (const lg::Vec2& p : f.landmarks) lms.push_back({p.x, p.y});
  return {{"type", "frame"}, {"t", f.timestamp_ms}, {"landmarks", lms}};
}

}  // namespace

TEST_CASE("request/response endpoints") {
  Running r(local_options());
  const unsigned short port = r.server.port();
  REQUIRE(port != 0);

  const Reply health = request(port, http::verb::get, "/health");
  CHECK(health.status == 200);
  CHECK(health.doc()["status"] == "ok");

  const Reply open = request(port, http::verb::post, "/session", R"({"a_high": 3.1})");
  CHECK(open.status == 200);
  const json session = open.doc();
  CHECK(session["config"]["a_high"] == 3.1);
  CHECK(session["config"]["a_low"] == 2.75);
  CHECK(session["image"]["w"] == 640);
  const std::string id = session["id"];

  const Reply plain = request(port, http::verb::post, "/session");
  CHECK(plain.status == 200);
  CHECK(plain.doc()["config"]["a_high"] == 3.0);

  const Reply bad = request(port, http::verb::post, "/session", R"({"a_high": "x"})");
  CHECK(bad.status == 400);
  CHECK(bad.doc()["code"] == "BadConfig");
  CHECK(request(port, http::verb::post, "/session", "{nope").doc()["code"] == "BadConfig");

  const Reply stats = request(port, http::verb::get, "/session/" + id + "/stats");
  CHECK(stats.status == 200);
  CHECK(stats.doc()["frames_processed"] == 0);
  CHECK(stats.doc()["state"] == "live");
  const Reply missing = request(port, http::verb::get, "/session/ffff/stats");
  CHECK(missing.status == 404);
  CHECK(missing.doc()["code"] == "UnknownSession");

  const Reply schema = request(port, http::verb::get, "/config/schema");
  CHECK(schema.status == 200);
  CHECK(schema.doc()["properties"].contains("a_high"));

  CHECK(request(port, http::verb::get, "/nowhere").status == 404);
  CHECK(request(port, http::verb::delete_, "/session/" + id).status == 200);
  CHECK(request(port, http::verb::get, "/session/" + id + "/stats").status == 404);
}

TEST_CASE("stream protocol") {
  Running r(local_options());
  const unsigned short port = r.server.port();
  const std::string id =
      request(port, http::verb::post, "/session", R"({"image": {"w": 512, "h": 512}})")
          .doc()["id"];

  WsClient ws(port, "/stream?session=" + id);
  ws.send({{"type", "freeze"}});
  const json early = ws.receive();
  CHECK(early["type"] == "error");
  CHECK(early["code"] == "NothingToFreeze");

  const lg::FaceMeshFrame f = e30_frame(3);
  ws.send(frame_message(f));
  const json g = ws.receive();
  CHECK(g == lg::guidance_message(lg::process_frame(f, lg::default_engine_config())));

  ws.send({{"type", "freeze"}});
  CHECK(ws.receive()["state"] == "frozen");
  ws.send(frame_message(e30_frame(20, 10.0)));
  const json moved = ws.receive();
  CHECK(moved["frozen"] == true);
  CHECK(moved["labels"] == g["labels"]);
  CHECK(moved["eyes"]["left"]["contour"][0][0] == 282.0);
  ws.send({{"type", "unfreeze"}});
  CHECK(ws.receive()["state"] == "live");

  ws.ws.write(net::buffer(std::string("{broken")));
  CHECK(ws.receive()["code"] == "SchemaError");

  const json stats = request(port, http::verb::get, "/session/" + id + "/stats").doc();
  CHECK(stats["frames_processed"] == 2);
}

TEST_CASE("stream without a session id opens one") {
  Running r(local_options());
  WsClient ws(r.server.port(), "/stream");
  const json hello = ws.receive();
  CHECK(hello["type"] == "session");
  const std::string id = hello["id"];
  CHECK(request(r.server.port(), http::verb::get, "/session/" + id + "/stats").status == 200);

  // Unknown ids are refused before the upgrade.
  WsClient* refused = nullptr;
  CHECK_THROWS(refused = new WsClient(r.server.port(), "/stream?session=bogus"));
  delete refused;
}

TEST_CASE("bursts keep the newest frame and count the rest as dropped") {
  Running r(local_options());
  const unsigned short port = r.server.port();
  const std::string id =
      request(port, http::verb::post, "/session", R"({"image": {"w": 512, "h": 512}})")
          .doc()["id"];
  WsClient ws(port, "/stream?session=" + id);
  constexpr int kBurst = 60;
  for (int k = 0; k < kBurst; ++k) ws.send(frame_message(e30_frame(k, 0.1 * k)));
  ws.send({{"type", "unfreeze"}});  // control messages are never dropped

  int replies = 0;
  std::int64_t last_t = -1;
  for (;;) {
    const json m = ws.receive();
    if (m["type"] == "state") break;
    REQUIRE(m["type"] == "guidance");
    CHECK(m["t"].get<std::int64_t>() > last_t);
    last_t = m["t"];
    ++replies;
  }
  CHECK(last_t == kBurst - 1);
  const json stats = request(port, http::verb::get, "/session/" + id + "/stats").doc();
  CHECK(stats["frames_processed"] == replies);
  CHECK(stats["frames_processed"].get<int>() + stats["frames_dropped"].get<int>() == kBurst);
}

TEST_CASE("static assets") {
  const auto dir = std::filesystem::temp_directory_path() / "linerguide_static_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "index.html") << "<html>overlay</html>";
  lg::ServerOptions o = local_options();
  o.static_dir = dir;
  Running r(o);
  const Reply index = request(r.server.port(), http::verb::get, "/");
  CHECK(index.status == 200);
  CHECK(index.body == "<html>overlay</html>");
  CHECK(request(r.server.port(), http::verb::get, "/../secret").status == 404);
  std::filesystem::remove_all(dir);
}

TEST_CASE("binding an occupied port fails") {
  Running r(local_options());
  lg::ServerOptions o = local_options();
  o.port = r.server.port();
  CHECK_THROWS_AS(lg::Server{o}, lg::BindError);
}
