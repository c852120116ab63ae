#include <csignal>
#include <exception>
#include <memory>
#include <ostream>
#include <thread>

#include <pthread.h>

#include "commands.hpp"

namespace csa::cli {

int cmd_serve(const service::ServiceConfig& config, std::ostream& out, std::ostream& err) {
  if (config.port < 0 || config.port > 65535) {
    err << "csa serve: port out of range: " << config.port << "\n";
    return kFailed;
  }
  if (config.time_scale < 0) {
    err << "csa serve: time scale must not be negative\n";
    return kFailed;
  }

  // Signals are taken synchronously by a dedicated thread so that stop()
  // never runs inside a handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::unique_ptr<service::HttpService> svc;
  try {
    svc = std::make_unique<service::HttpService>(config);
  } catch (const std::exception& e) {
    err << "csa serve: " << e.what() << "\n";
    return kFailed;
  }
  if (!svc->bind()) {
    err << "csa serve: cannot bind " << config.host << ":" << config.port << "\n";
    return kFailed;
  }

  std::jthread waiter([&svc, signals](std::stop_token) {
    int sig = 0;
    sigwait(&signals, &sig);
    svc->stop();
  });

  out << "listening on http://" << config.host << ":" << svc->port() << std::endl;
  svc->run();

  // If run() returned on its own the waiter is still parked in sigwait.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  out << "stopped" << std::endl;
  return kOk;
}

}  // namespace csa::cli
