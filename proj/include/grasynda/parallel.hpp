#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace grasynda {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers write into
// pre-sized slots indexed by i, so output order never depends on scheduling.
// The first exception thrown by any task is rethrown once all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn &&fn) {
	const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
	if (workers <= 1) {
		for (std::size_t i = 0; i < n; ++i) {
			fn(i);
		}
		return;
	}
	std::atomic<std::size_t> next{0};
	std::atomic<bool> failed{false};
	std::exception_ptr error;
	std::mutex error_mutex;
	auto work = [&]() {
		for (;;) {
			const std::size_t i = next.fetch_add(1);
			if (i >= n || failed.load()) {
				return;
			}
			try {
				fn(i);
			} catch (...) {
				std::lock_guard lock(error_mutex);
				if (!error) {
					error = std::current_exception();
				}
				failed.store(true);
			}
		}
	};
	std::vector<std::thread> pool;
	pool.reserve(workers);
	for (std::size_t w = 0; w < workers; ++w) {
		pool.emplace_back(work);
	}
	for (auto &t : pool) {
		t.join();
	}
	if (error) {
		std::rethrow_exception(error);
	}
}

} // namespace grasynda
