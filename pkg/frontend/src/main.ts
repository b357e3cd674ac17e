/** Browser entry point. Query parameters pick the transport:
 *   ?api=http://host:8080/api/v1   live service
 *   ?bundle=./bundle               static export (default: ./bundle)
 */

import { BundleClient, HttpApiClient } from "./client.js";
import { Dashboard, windowHashHost } from "./app.js";

function makeClient() {
  const params = new URLSearchParams(window.location.search);
  const api = params.get("api");
  if (api) return new HttpApiClient(api);
  return new BundleClient(params.get("bundle") ?? "./bundle");
}

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
void new Dashboard(makeClient(), root, windowHashHost(window)).start();
