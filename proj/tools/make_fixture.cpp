// Writes the bundled fixtures under <root>/synthetic and <root>/unanimous: a
// 0.05 log-return response to the sentiment indicator at horizon 10 and none
// elsewhere.
#include <cstdio>
#include <exception>
#include <filesystem>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_fixture <fixtures-root>\n");
    return 2;
  }
  try {
    namespace synthetic = stancelp::synthetic;
    const std::filesystem::path root = argv[1];
    synthetic::Spec spec;
    spec.beta = [](int h) { return h == 10 ? 0.05 : 0.0; };
    spec.seed = 47;
    spec.weekend_event = true;
    const synthetic::Data data = synthetic::Generate(spec);
    synthetic::WriteFixture(data, root / "synthetic", 20240101);
    synthetic::WriteUnanimousFixture(data, root / "unanimous", 20240101);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "make_fixture: %s\n", e.what());
    return 1;
  }
  return 0;
}
