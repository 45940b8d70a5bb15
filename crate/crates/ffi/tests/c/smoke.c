#include <stdio.h>
#include <string.h>
#include "duality_kit.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      const char *e = dk_last_error();                           \
      fprintf(stderr, "line %d: %s\n", __LINE__, e ? e : "");    \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  DkKernel *mu = NULL, *nu = NULL, *k = NULL;
  CHECK(dk_kernel_from_json("{\"rows\": [[\"1/2\", \"1/2\"], [0, 1]]}", &mu) == DK_STATUS_OK);
  CHECK(dk_kernel_from_json("{\"rows\": [[1, 0], [\"1/3\", \"2/3\"]]}", &nu) == DK_STATUS_OK);
  CHECK(dk_kernel_compose(mu, nu, &k) == DK_STATUS_OK);
  double p = 0.0;
  CHECK(dk_kernel_prob(k, 0, 0, &p) == DK_STATUS_OK);
  CHECK(p > 0.6666 && p < 0.6667);

  char *json = NULL;
  CHECK(dk_kernel_to_json(k, &json) == DK_STATUS_OK);
  CHECK(strstr(json, "\"2/3\"") != NULL);
  dk_string_free(json);

  DkSpace *x = NULL, *s = NULL;
  CHECK(dk_space_from_json("{\"points\": [\"a\", \"b\", \"c\"], \"blocks\": [[0, 1], [2]]}", &x) == DK_STATUS_OK);
  size_t unit[3];
  CHECK(dk_sobrify(x, &s, unit) == DK_STATUS_OK);
  CHECK(dk_space_n_points(s) == 2 && dk_space_is_sober(s) && unit[0] == unit[1] && unit[1] != unit[2]);

  CHECK(dk_kernel_from_json("{\"rows\": [[\"1/2\", \"1/3\"]]}", &mu) == DK_STATUS_INVALID_INPUT);
  CHECK(dk_last_error() != NULL);

  dk_space_free(x);
  dk_space_free(s);
  dk_kernel_free(k);
  dk_kernel_free(nu);
  printf("ok %s\n", dk_version());
  return 0;
}
