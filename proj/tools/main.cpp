#include <cstdlib>
#include <iostream>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_logger_st("flagctrl");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("FLAGCTRL_LOG")) spdlog::set_level(spdlog::level::from_str(level));
  return flagctrl::cli::run(argc, argv, std::cout, std::cerr);
}
