#include "qtri/runner.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <thread>

#include "qtri/error.hpp"

namespace qtri {

VerificationReport verify_captured(const IdentityInstance& instance) {
  try {
    return verify_identity(instance);
  } catch (const std::exception& e) {
    VerificationReport r;
    r.instance = instance;
    r.match = false;
    r.error = e.what();
    return r;
  }
}

unsigned default_jobs() {
  if (const char* env = std::getenv("QTRI_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void verify_all(const std::vector<IdentityInstance>& instances, unsigned jobs,
                const std::function<void(std::size_t, const VerificationReport&)>& sink) {
  const std::size_t total = instances.size();
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < total; ++i) sink(i, verify_captured(instances[i]));
    return;
  }

  std::vector<std::optional<VerificationReport>> done(total);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable ready;

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < total;) {
      auto r = verify_captured(instances[i]);
      std::lock_guard lock(mu);
      done[i] = std::move(r);
      ready.notify_one();
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);

  // The calling thread restores order and streams.
  for (std::size_t i = 0; i < total; ++i) {
    std::unique_lock lock(mu);
    ready.wait(lock, [&] { return done[i].has_value(); });
    auto r = std::move(*done[i]);
    done[i].reset();
    lock.unlock();
    sink(i, r);
  }
}

}  // namespace qtri
